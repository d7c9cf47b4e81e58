#include "lpimager/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

namespace lpimager {

namespace {

using nlohmann::json;

// shortest decimal representation that round-trips
std::string format_double(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

json values_to_json(const std::vector<ExtendedReal>& values) {
    json arr = json::array();
    for (double v : values) {
        if (is_miss(v))
            arr.push_back("inf");
        else
            arr.push_back(v);
    }
    return arr;
}

json payload_json(const LpImage& img) {
    json j;
    j["n"] = img.n;
    j["m"] = img.m;
    j["eta"] = img.spec.eta;
    j["delta"] = img.spec.delta;
    j["z"] = json(img.z);
    j["c"] = json(img.c);
    j["order"] = "algorithm2";
    j["values"] = values_to_json(img.values);
    j["problem_sha256"] = img.problem_sha256;
    return j;
}

}  // namespace

std::string sha256_hex(std::span<const unsigned char> bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_hex(const std::string& text) {
    return sha256_hex(std::span<const unsigned char>(
        reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_text_file(path)); }

std::string image_to_json(const LpImage& img) {
    json j = payload_json(img);
    j["mode"] = img.mode;
    j["workers"] = img.workers;
    return j.dump();
}

std::string image_payload(const LpImage& img) { return payload_json(img).dump(); }

LpImage image_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("image file: malformed JSON: ") + e.what());
    }
    LpImage img;
    img.n = j.at("n").get<int>();
    img.m = j.at("m").get<int>();
    img.spec.n = img.n;
    img.spec.eta = j.at("eta").get<int>();
    img.spec.delta = j.at("delta").get<double>();
    img.z = j.at("z").get<Vec>();
    img.c = j.at("c").get<Vec>();
    img.spec.z = img.z;
    if (j.at("order").get<std::string>() != "algorithm2")
        throw std::runtime_error("image file: unsupported value order");
    img.problem_sha256 = j.at("problem_sha256").get<std::string>();
    img.mode = j.at("mode").get<std::string>();
    img.workers = j.at("workers").get<int>();
    for (const auto& v : j.at("values")) {
        if (v.is_string()) {
            if (v.get<std::string>() != "inf") throw std::runtime_error("image file: unexpected value token");
            img.values.push_back(kMiss);
        } else {
            img.values.push_back(v.get<double>());
        }
    }
    return img;
}

void write_image_json(const LpImage& img, const std::string& path) {
    write_text_file(path, image_to_json(img) + '\n');
}

LpImage read_image_json(const std::string& path) { return image_from_json(read_text_file(path)); }

std::string image_to_csv(const LpImage& img) {
    std::ostringstream out;
    out << "# n " << img.n << '\n';
    out << "# m " << img.m << '\n';
    out << "# eta " << img.spec.eta << '\n';
    out << "# delta " << format_double(img.spec.delta) << '\n';
    out << "# z";
    for (double v : img.z) out << ' ' << format_double(v);
    out << '\n';
    out << "# c";
    for (double v : img.c) out << ' ' << format_double(v);
    out << '\n';
    out << "# order algorithm2\n";
    out << "# problem_sha256 " << img.problem_sha256 << '\n';
    out << "# mode " << img.mode << '\n';
    out << "# workers " << img.workers << '\n';
    for (double v : img.values) {
        if (is_miss(v))
            out << "inf\n";
        else
            out << format_double(v) << '\n';
    }
    return out.str();
}

void write_image_csv(const LpImage& img, const std::string& path) {
    write_text_file(path, image_to_csv(img));
}

std::string points_to_csv(const std::vector<Vec>& points) {
    std::ostringstream out;
    for (const Vec& p : points) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (j > 0) out << ',';
            out << format_double(p[j]);
        }
        out << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing file: " + path);
}

}  // namespace lpimager
