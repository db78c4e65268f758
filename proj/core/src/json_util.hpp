#pragma once

// Shared JSON helpers for config and report (private to the library).

#include "finsec/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace finsec::detail {

using json = nlohmann::ordered_json;

inline void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
}

inline void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    expect_object(j, path);
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : keys) ok = ok || k == a;
        if (!ok) throw ConfigError(path + "/" + k, "unknown key");
    }
}

// Non-finite doubles travel as the strings "inf", "-inf" and "nan".
inline json encode(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

inline double get_double(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ConfigError(path, "expected a number");
}

inline long long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(path, "expected an integer");
    return j.get<long long>();
}

inline std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

inline bool get_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

inline json encode(std::complex<double> z) {
    if (z.imag() == 0.0) return encode(z.real());
    return json::array({encode(z.real()), encode(z.imag())});
}

inline std::complex<double> get_complex(const json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError(path, "complex value must be [re, im]");
        return {get_double(j[0], path + "/0"), get_double(j[1], path + "/1")};
    }
    return {get_double(j, path), 0.0};
}

inline const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    return j;
}

inline std::vector<double> get_doubles(const json& j, const std::string& path) {
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& x : array_at(j, path)) out.push_back(get_double(x, path + "/" + std::to_string(i++)));
    return out;
}

inline std::vector<std::complex<double>> get_complexes(const json& j, const std::string& path) {
    std::vector<std::complex<double>> out;
    std::size_t i = 0;
    for (const auto& x : array_at(j, path)) out.push_back(get_complex(x, path + "/" + std::to_string(i++)));
    return out;
}

inline json encode(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(encode(x));
    return a;
}

inline json encode(const std::vector<std::complex<double>>& v) {
    json a = json::array();
    for (auto z : v) a.push_back(encode(z));
    return a;
}

}  // namespace finsec::detail
