#include "stokes_qsl/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "stokes_qsl/errors.hpp"

namespace sqsl::csv {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";

    // Decimal exponent of the rounded 17-digit representation; parsing it
    // from the scientific form keeps boundary cases (9.99...e5 rounding up
    // to 1e6) consistent with what actually gets printed.
    char sci[64];
    std::snprintf(sci, sizeof(sci), "%.16e", x);
    const char* epos = sci;
    while (*epos && *epos != 'e') ++epos;
    const int exp10 = std::atoi(epos + 1);

    char buf[64];
    if (exp10 >= 6 || exp10 < -4) {
        return sci;
    }
    const int decimals = 16 - exp10;
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

Writer::Writer(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary) {
    if (!out_) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    line(header);
}

void Writer::row(const std::vector<std::string>& cells) {
    line(cells);
    ++rows_;
}

void Writer::line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void Writer::close() {
    if (closed_) return;
    closed_ = true;
    out_.flush();
    out_.close();
    if (out_.fail()) {
        throw IoError("write to '" + path_.string() + "' failed");
    }
}

Writer::~Writer() {
    if (!closed_) {
        // Destructor must not throw; explicit close() reports failures.
        out_.close();
    }
}

}  // namespace sqsl::csv
