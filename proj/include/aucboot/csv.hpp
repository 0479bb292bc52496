#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aucboot {

/// Fixed-precision, locale-independent number formatting for CSV cells.
inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string csv_number(std::size_t v) { return std::to_string(v); }

/// In-memory CSV table with a declared header. Row arity is checked against
/// the header on every append, so a malformed table cannot reach disk.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
        if (header_.empty()) throw std::invalid_argument("csv: header must not be empty");
    }

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header_.size())
            throw std::invalid_argument("csv: row has " + std::to_string(cells.size()) +
                                        " cells, header declares " +
                                        std::to_string(header_.size()));
        rows_.push_back(std::move(cells));
    }

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    std::string to_string() const {
        std::string out;
        auto append_line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        append_line(header_);
        for (const auto& r : rows_) append_line(r);
        return out;
    }

    void write_atomic(const std::filesystem::path& path) const { atomic_write(path, to_string()); }

    /// Writes via a temporary file in the same directory plus a rename, so a
    /// reader never observes a half-written file.
    static void atomic_write(const std::filesystem::path& path, const std::string& content) {
        const std::filesystem::path tmp = path.string() + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
            f << content;
            if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace aucboot
