#include "blindpred/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "blindpred/errors.hpp"

namespace blindpred {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_value(const std::string& text, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    out << "# n=" << m.rows() << '\n';
    if (m.rows() != m.cols()) out << "# cols=" << m.cols() << '\n';
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Matrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_value(trim(cell), line_no));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorCode::InvalidInput, "ragged matrix at line " + std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    Matrix m(static_cast<long>(rows.size()), rows.empty() ? 0L : static_cast<long>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    return m;
}

void write_path_csv(std::ostream& out, const std::vector<double>& samples) {
    for (double x : samples) out << format_double(x) << '\n';
}

std::vector<double> read_path_csv(std::istream& in) {
    std::vector<double> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.find(',') != std::string::npos) {
            throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": expected a single column");
        }
        samples.push_back(parse_value(line, line_no));
    }
    return samples;
}

std::vector<double> read_path_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    return read_path_csv(in);
}

}  // namespace blindpred
