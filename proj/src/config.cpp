#include "lawson/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lawson {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        cfg.entries_[section.empty() ? key : section + "." + key] = value;
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool RunConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

long RunConfig::get_int(const std::string& key, long fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    size_t pos = 0;
    long v = std::stol(it->second, &pos);
    if (pos != it->second.size())
        throw std::invalid_argument("config key " + key + ": not an integer");
    return v;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
        throw std::invalid_argument("config key " + key + ": not a number");
    return v;
}

cplx RunConfig::get_cplx(const std::string& key, cplx fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_cplx(it->second);
}

std::vector<cplx> RunConfig::get_cplx_list(const std::string& key) const {
    auto it = entries_.find(key);
    std::vector<cplx> out;
    if (it == entries_.end()) return out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_cplx(trim(item)));
    return out;
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& [k, v] : entries_) {  // std::map iterates sorted
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    return h;
}

std::string RunConfig::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

cplx parse_cplx(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    // Split off a trailing imaginary term: scan for the last +/- that is not
    // an exponent sign and not the leading sign.
    auto parse_term = [](const std::string& t) -> double {
        if (t == "+" || t.empty()) return 1.0;
        if (t == "-") return -1.0;
        size_t pos = 0;
        double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("malformed number: " + t);
        return v;
    };

    bool has_i = s.back() == 'i' || s.back() == 'I';
    if (!has_i) return cplx{parse_term(s), 0.0};

    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') &&
            body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return cplx{0.0, parse_term(body)};
    return cplx{parse_term(body.substr(0, split)), parse_term(body.substr(split))};
}

std::string format_cplx(cplx z) {
    std::ostringstream out;
    out.precision(15);
    out << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return out.str();
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        out.push_back(c);
        if (c == '"') out.push_back('"');
    }
    out.push_back('"');
    return out;
}

}  // namespace lawson
