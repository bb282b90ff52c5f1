#include "bpdn/csv.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "bpdn/error.hpp"

namespace bpdn {

std::string format_number(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

void CsvTable::add_row(std::vector<Cell> row) {
    detail::require(row.size() == header_.size(), "CSV row width does not match the header");
    rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
    for (const auto& m : metadata_) out << "# " << m << '\n';
    for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << format_number(v);
                    else
                        out << v;
                },
                row[i]);
        }
        out << '\n';
    }
}

std::string CsvTable::str() const {
    std::ostringstream s;
    write(s);
    return s.str();
}

void CsvTable::save(const std::string& path) const {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot open output file: " + path);
    write(out);
    if (!out) throw InvalidArgument("failed writing output file: " + path);
}

}  // namespace bpdn
