#include "cohdet/csv.hpp"

#include <charconv>
#include <stdexcept>

#include "cohdet/errors.hpp"

namespace cohdet {

std::string csv_number(double value) {
    char buf[48];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
    if (res.ec != std::errc{}) throw numerical_error("csv_number: formatting failed");
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
    if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::separator() {
    if (in_row_ >= columns_) throw std::logic_error("CsvWriter: too many cells in row");
    if (in_row_) out_ << ',';
    ++in_row_;
}

CsvWriter& CsvWriter::cell(double value) {
    separator();
    out_ << csv_number(value);
    return *this;
}

CsvWriter& CsvWriter::cell(long long value) {
    separator();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::cell(int value) { return cell(static_cast<long long>(value)); }

CsvWriter& CsvWriter::cell(const std::string& value) {
    separator();
    out_ << value;
    return *this;
}

void CsvWriter::end_row() {
    if (in_row_ != columns_) throw std::logic_error("CsvWriter: row is missing cells");
    out_ << '\n';
    in_row_ = 0;
}

}  // namespace cohdet
