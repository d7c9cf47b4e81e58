"""LP feasible-region imaging.

Builds distance images of linear-programming feasible sets: a receptive
field (regular lattice) is placed on the objective hyperplane and each
lattice point is mapped to the distance of its ray projection onto the
polytope, with sequential and parallel builders and an analytic
scalability model.
"""

from lpimager._core import (
    Basis,
    Box,
    build_basis,
    build_frame,
    build_image,
    Bundle,
    candidate_distance,
    candidate_op_count,
    CellCapError,
    check_field_axioms,
    decode_op_count,
    distance_to_objective,
    enumerate_field,
    field_size,
    fit_params,
    Frame,
    frame_from_z,
    generate,
    Image,
    image_payload,
    image_to_json,
    map_op_count,
    membership,
    objective_value,
    orthogonal_projection,
    Problem,
    project_polytope,
    ray_entry,
    read_image_json,
    read_problem,
    receptive_point,
    sample_frame_violations,
    scalability_bound,
    scalability_bound_analytic,
    sha256_file,
    validate,
    ValidationReport,
    write_image_csv,
    write_image_json,
    write_problem,
)

__all__ = [
    "Basis",
    "Box",
    "build_basis",
    "build_frame",
    "build_image",
    "Bundle",
    "candidate_distance",
    "candidate_op_count",
    "CellCapError",
    "check_field_axioms",
    "decode_op_count",
    "distance_to_objective",
    "enumerate_field",
    "field_size",
    "fit_params",
    "Frame",
    "frame_from_z",
    "generate",
    "Image",
    "image_payload",
    "image_to_json",
    "map_op_count",
    "membership",
    "objective_value",
    "orthogonal_projection",
    "Problem",
    "project_polytope",
    "ray_entry",
    "read_image_json",
    "read_problem",
    "receptive_point",
    "sample_frame_violations",
    "scalability_bound",
    "scalability_bound_analytic",
    "sha256_file",
    "validate",
    "ValidationReport",
    "write_image_csv",
    "write_image_json",
    "write_problem",
]

__version__ = "0.1.0"
