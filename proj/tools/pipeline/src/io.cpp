#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace cadence::pipeline::io {

std::string num(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string num(long long v) { return std::to_string(v); }

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    return out;
}

std::string escape_optional(const std::optional<std::string>& text) {
    return text ? escape(*text) : std::string("\\N");
}

std::optional<std::string> unescape(std::string_view field) {
    if (field == "\\N") return std::nullopt;
    std::string out;
    out.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (field[i] != '\\' || i + 1 == field.size()) {
            out += field[i];
            continue;
        }
        switch (field[++i]) {
        case 't': out += '\t'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        default: out += field[i];
        }
    }
    return out;
}

Table::Table(std::vector<std::string> header) : width_(header.size()) { row(header); }

Table& Table::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) {
        throw DomainError("table row has " + std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(width_));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) text_ += '\t';
        text_ += fields[i];
    }
    text_ += '\n';
    return *this;
}

void Table::save(const fs::path& path) const { write_file(path, text_); }

double Rows::real(std::size_t r, std::size_t c) const {
    const auto& f = rows.at(r).at(c);
    double v = 0.0;
    const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw ParseError(path.generic_string() + ": bad number '" + f + "'", r + 2);
    }
    return v;
}

long long Rows::integer(std::size_t r, std::size_t c) const {
    const auto& f = rows.at(r).at(c);
    long long v = 0;
    const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
        throw ParseError(path.generic_string() + ": bad integer '" + f + "'", r + 2);
    }
    return v;
}

std::optional<long long> Rows::optional_integer(std::size_t r, std::size_t c) const {
    if (rows.at(r).at(c).empty()) return std::nullopt;
    return integer(r, c);
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

} // namespace

Rows read_table(const fs::path& path, const std::vector<std::string>& header) {
    require(path);
    std::istringstream in(read_file(path));
    Rows out{path, {}, {}};
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.generic_string() + ": missing header", 1);
    }
    out.header = split_tabs(line);
    if (!header.empty() && out.header != header) {
        throw ParseError(path.generic_string() + ": unexpected header", 1);
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = split_tabs(line);
        if (fields.size() != out.header.size()) {
            throw ParseError(path.generic_string() + ": expected " + std::to_string(out.header.size()) +
                                 " fields",
                             line_no);
        }
        out.rows.push_back(std::move(fields));
    }
    return out;
}

std::string read_file(const fs::path& path) {
    require(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.generic_string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, std::string_view text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw DomainError("cannot write " + tmp.generic_string());
        }
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) {
            throw DomainError("write failed for " + tmp.generic_string());
        }
    }
    fs::rename(tmp, path);
}

void require(const fs::path& path) {
    if (!fs::exists(path)) {
        throw DependencyError(path);
    }
}

} // namespace cadence::pipeline::io
