#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace bpdn {

/// In-memory CSV table. Numbers are written with 17 significant digits so a
/// parse of the output reproduces the doubles exactly. Metadata lines are
/// written first, each prefixed with "# ".
class CsvTable {
public:
    using Cell = std::variant<double, long long, std::string>;

    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<Cell> row);
    void add_metadata(std::string line) { metadata_.push_back(std::move(line)); }

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::vector<std::string>& metadata() const noexcept { return metadata_; }

    void write(std::ostream& out) const;
    std::string str() const;
    /// Writes to `path`, or to stdout when path is empty or "-".
    void save(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::string> metadata_;
};

std::string format_number(double v);

}  // namespace bpdn
