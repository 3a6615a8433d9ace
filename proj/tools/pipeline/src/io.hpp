#pragma once

#include "cadence/pipeline.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cadence::pipeline::io {

// Shortest representation that reads back to the same double.
[[nodiscard]] std::string num(double v);
[[nodiscard]] std::string num(long long v);
[[nodiscard]] inline std::string num(int v) { return num(static_cast<long long>(v)); }
[[nodiscard]] inline std::string num(std::size_t v) { return num(static_cast<long long>(v)); }

// Text fields escape backslash, tab, CR and LF; an absent value is "\N".
[[nodiscard]] std::string escape(std::string_view text);
[[nodiscard]] std::string escape_optional(const std::optional<std::string>& text);
[[nodiscard]] std::optional<std::string> unescape(std::string_view field);

// Builds a whole table in memory; `save` replaces the file in one rename.
class Table {
public:
    explicit Table(std::vector<std::string> header);

    Table& row(const std::vector<std::string>& fields);
    void save(const fs::path& path) const;

private:
    std::size_t width_;
    std::string text_;
};

struct Rows {
    fs::path path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] double real(std::size_t r, std::size_t c) const;
    [[nodiscard]] long long integer(std::size_t r, std::size_t c) const;
    [[nodiscard]] std::optional<long long> optional_integer(std::size_t r, std::size_t c) const;
};

// Reads a table written by Table, checking the header unless `header` is
// empty. Throws DependencyError when the file is absent and ParseError on a
// malformed row.
[[nodiscard]] Rows read_table(const fs::path& path, const std::vector<std::string>& header);

[[nodiscard]] std::string read_file(const fs::path& path);
void write_file(const fs::path& path, std::string_view text);

// Throws DependencyError unless `path` exists.
void require(const fs::path& path);

} // namespace cadence::pipeline::io
