#pragma once

// Run configuration: sectioned key = value text (diff-friendly, hand-editable
// experiment records), typed accessors, and a canonical FNV-1a content hash
// embedded in every emitted artifact alongside the library version.

#include "lawson/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lawson {

inline constexpr const char* library_version = "0.1.0";

class RunConfig {
public:
    static RunConfig parse(const std::string& text);
    static RunConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;  // key is "section.name"
    std::string get_string(const std::string& key, const std::string& fallback = {}) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    cplx get_cplx(const std::string& key, cplx fallback) const;
    std::vector<cplx> get_cplx_list(const std::string& key) const;

    // FNV-1a 64-bit over the sorted canonical "key=value\n" lines.
    std::uint64_t hash() const;
    std::string hash_hex() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

// "a+bi" with optional whitespace; accepts pure-real, pure-imaginary, and
// "i"/"-i" shorthands.  Throws std::invalid_argument on malformed input.
cplx parse_cplx(const std::string& text);

std::string format_cplx(cplx z);

// RFC-4180 field quoting: wraps in double quotes when the field contains a
// comma, quote, or newline, doubling interior quotes.
std::string csv_escape(const std::string& field);

}  // namespace lawson
