// csv.hpp — deterministic CSV output: UTF-8, comma separated, one header
// row, LF line endings on every platform, and a fixed float format so that
// identical inputs always produce byte-identical files.

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sqsl::csv {

// Formats with 17 significant digits (round-trip safe for IEEE doubles).
// Magnitudes in [1e-4, 1e6) print in fixed notation, everything else in
// scientific notation; zero prints as "0" regardless of sign.
std::string format_double(double x);

class Writer {
public:
    // Opens the file in binary mode (LF endings) and writes the header row.
    // Throws IoError when the file cannot be created.
    Writer(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);

    // Flushes and closes; throws IoError if the stream failed anywhere.
    void close();

    std::size_t rows_written() const { return rows_; }
    const std::filesystem::path& path() const { return path_; }

    ~Writer();

private:
    void line(const std::vector<std::string>& cells);

    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t rows_ = 0;
    bool closed_ = false;
};

}  // namespace sqsl::csv
