#include "nric/touchstone.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "nric/errors.hpp"

namespace nric {
namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

Complex decode(TouchstoneFormat fmt, double a, double b) {
    constexpr double deg = kPi / 180.0;
    switch (fmt) {
        case TouchstoneFormat::RI: return {a, b};
        case TouchstoneFormat::MA: return std::polar(a, b * deg);
        case TouchstoneFormat::DB: return std::polar(std::pow(10.0, a / 20.0), b * deg);
    }
    return {};
}

struct Options {
    double freq_scale = 1e9;
    TouchstoneFormat format = TouchstoneFormat::MA;
    double resistance = 50.0;
};

Options parse_options(const std::string& line, int line_no) {
    Options opt;
    const auto toks = tokens(line.substr(1));
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto t = upper(toks[i]);
        if (t == "HZ") opt.freq_scale = 1.0;
        else if (t == "KHZ") opt.freq_scale = 1e3;
        else if (t == "MHZ") opt.freq_scale = 1e6;
        else if (t == "GHZ") opt.freq_scale = 1e9;
        else if (t == "S") continue;
        else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
            throw IoError("only S-parameter files are supported", line_no);
        }
        else if (t == "RI") opt.format = TouchstoneFormat::RI;
        else if (t == "MA") opt.format = TouchstoneFormat::MA;
        else if (t == "DB") opt.format = TouchstoneFormat::DB;
        else if (t == "R") {
            if (i + 1 >= toks.size() || !parse_double(toks[i + 1], opt.resistance) || !(opt.resistance > 0.0)) {
                throw IoError("option line: R must be followed by a positive resistance", line_no);
            }
            ++i;
        } else {
            throw IoError("malformed option line: unexpected token '" + toks[i] + "'", line_no);
        }
    }
    return opt;
}

}  // namespace

std::string_view to_string(TouchstoneFormat fmt) {
    switch (fmt) {
        case TouchstoneFormat::RI: return "RI";
        case TouchstoneFormat::MA: return "MA";
        case TouchstoneFormat::DB: return "DB";
    }
    return "?";
}

TouchstoneRecord read_touchstone(std::istream& in) {
    TouchstoneRecord rec;
    Options opt;
    bool seen_options = false;
    bool seen_data = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto bang = line.find('!'); bang != std::string::npos) line.erase(bang);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (seen_options) throw IoError("duplicate option line", line_no);
            if (seen_data) throw IoError("option line must precede data", line_no);
            opt = parse_options(line.substr(first), line_no);
            seen_options = true;
            continue;
        }
        const auto toks = tokens(line);
        if (toks.size() != 9) {
            throw IoError("expected 9 columns (f + 4 complex pairs), found " + std::to_string(toks.size()), line_no);
        }
        std::array<double, 9> v{};
        for (std::size_t i = 0; i < 9; ++i) {
            if (!parse_double(toks[i], v[i])) throw IoError("non-numeric field '" + toks[i] + "'", line_no);
        }
        const double f = v[0] * opt.freq_scale;
        if (!rec.freqs.empty() && !(f > rec.freqs.back())) {
            throw IoError("frequency axis is not strictly increasing", line_no);
        }
        seen_data = true;
        rec.freqs.push_back(f);
        rec.rows.push_back(TwoPort::s(decode(opt.format, v[1], v[2]), decode(opt.format, v[5], v[6]),
                                      decode(opt.format, v[3], v[4]), decode(opt.format, v[7], v[8]),
                                      opt.resistance, opt.resistance));
    }
    if (rec.freqs.size() < 2) throw IoError("need at least two data rows", line_no);
    rec.format = opt.format;
    rec.reference_resistance = opt.resistance;
    return rec;
}

TouchstoneRecord read_touchstone(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_touchstone(in);
}

void write_touchstone(std::ostream& out, const TouchstoneRecord& rec) {
    if (rec.freqs.size() != rec.rows.size()) throw ValidationError("touchstone record: size mismatch");
    out << fmt::format("# HZ S RI R {:.17g}\n", rec.reference_resistance);
    out << "! f S11 S21 S12 S22 (re im)\n";
    for (std::size_t i = 0; i < rec.freqs.size(); ++i) {
        const auto& s = rec.rows[i];
        out << fmt::format("{:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n", rec.freqs[i],
                           s.m11.real(), s.m11.imag(), s.m21.real(), s.m21.imag(), s.m12.real(), s.m12.imag(),
                           s.m22.real(), s.m22.imag());
    }
    if (!out) throw IoError("write failed");
}

void write_touchstone(const std::filesystem::path& path, const TouchstoneRecord& rec) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_touchstone(out, rec);
}

NetworkTable to_table(const TouchstoneRecord& rec, double reciprocity_tol) {
    return import_override(rec.freqs, rec.rows, reciprocity_tol);
}

TouchstoneRecord to_record(const NetworkTable& table) {
    TouchstoneRecord rec;
    rec.freqs = table.frequencies();
    rec.rows = table.rows();
    rec.reference_resistance = rec.rows.empty() ? 50.0 : rec.rows.front().zp1;
    return rec;
}

}  // namespace nric
