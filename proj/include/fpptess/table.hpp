#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fpptess {

// Result table with a config echo, written atomically (temp file + rename)
// as CSV (comma separated, '.' decimal, '\n' line ends, UTF-8) or JSON.
// Identical config and seed give byte-identical files when the timestamp
// line is suppressed.
class Table {
public:
    using Cell = std::variant<double, long long, std::string>;

    explicit Table(std::vector<std::string> columns);

    void set_config(std::vector<std::pair<std::string, std::string>> config);
    void add_row(std::vector<Cell> row);

    std::size_t n_rows() const { return rows_.size(); }

    // format: "csv" or "json"; with_timestamp adds a generation-time comment
    void write(const std::string& path, const std::string& format,
               bool with_timestamp) const;

    std::string to_csv(bool with_timestamp) const;
    std::string to_json(bool with_timestamp) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);

// Atomic file write used by all emitters: write to `path + ".tmp"`, then
// rename over `path`; no partial outputs are left behind on failure.
void atomic_write_file(const std::string& path, const std::string& contents);

} // namespace fpptess
