#include "fpptess/table.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "fpptess/errors.hpp"

namespace fpptess {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::set_config(std::vector<std::pair<std::string, std::string>> config) {
    config_ = std::move(config);
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw invalid_parameter("Table: row width does not match columns");
    rows_.push_back(std::move(row));
}

namespace {

std::string cell_to_string(const Table::Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

std::string timestamp_line() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string("# generated_at: ") + buf + "\n";
}

} // namespace

std::string Table::to_csv(bool with_timestamp) const {
    std::string out;
    if (with_timestamp) out += timestamp_line();
    std::string cfg = "# config:";
    for (const auto& [k, v] : config_) cfg += " " + k + "=" + v;
    out += cfg + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ",";
        out += columns_[i];
    }
    out += "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += cell_to_string(row[i]);
        }
        out += "\n";
    }
    return out;
}

std::string Table::to_json(bool with_timestamp) const {
    nlohmann::json j;
    if (with_timestamp) {
        std::string ts = timestamp_line();
        j["generated_at"] = ts.substr(16, ts.size() - 17);
    }
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_) cfg[k] = v;
    j["config"] = cfg;
    j["columns"] = columns_;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rows_) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) {
            if (std::holds_alternative<double>(c))
                r.push_back(std::get<double>(c));
            else if (std::holds_alternative<long long>(c))
                r.push_back(std::get<long long>(c));
            else
                r.push_back(std::get<std::string>(c));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

void Table::write(const std::string& path, const std::string& format,
                  bool with_timestamp) const {
    if (format == "csv")
        atomic_write_file(path, to_csv(with_timestamp));
    else if (format == "json")
        atomic_write_file(path, to_json(with_timestamp));
    else
        throw invalid_parameter("Table: unknown format '" + format + "'");
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_failure("cannot open '" + tmp + "' for writing");
        out << contents;
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw io_failure("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw io_failure("rename to '" + path + "' failed");
    }
}

} // namespace fpptess
