// Minimal CSV emission: UTF-8, header row, '.' decimal separator regardless
// of locale, scientific notation with 17 significant digits so every double
// round-trips exactly.

#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace cohdet {

// Locale-independent scientific formatting, e.g. -1.2339871e+04 widened to
// 16 fractional digits.
std::string csv_number(double value);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);

    CsvWriter& cell(double value);
    CsvWriter& cell(long long value);
    CsvWriter& cell(int value);
    CsvWriter& cell(const std::string& value);
    void end_row();

private:
    std::ostream& out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;

    void separator();
};

}  // namespace cohdet
