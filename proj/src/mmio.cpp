#include "abslin/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace abslin {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Line-oriented tokenizer that remembers which line each token came from.
class Scanner {
  public:
    explicit Scanner(std::istream& in) : in_(in) {}

    std::size_t line() const { return line_; }

    // First non-comment, non-blank line after the header.
    bool next_content_line(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (raw.empty() || raw[0] == '%') continue;
            if (raw.find_first_not_of(" \t") == std::string::npos) continue;
            out = raw;
            return true;
        }
        return false;
    }

    bool header_line(std::string& out) {
        std::string raw;
        if (!std::getline(in_, raw)) return false;
        ++line_;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        out = raw;
        return true;
    }

  private:
    std::istream& in_;
    std::size_t line_ = 0;
};

DenseMatrix read_array(std::istream& in) {
    Scanner sc(in);
    std::string line;
    if (!sc.header_line(line)) throw ParseError("empty file", 1);
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (lowercase(banner) != "%%matrixmarket" || lowercase(object) != "matrix" ||
            lowercase(format) != "array" || lowercase(field) != "real" ||
            lowercase(symmetry) != "general")
            throw ParseError("expected header '%%MatrixMarket matrix array real general'",
                             sc.line());
    }

    if (!sc.next_content_line(line)) throw ParseError("missing dimension line", sc.line() + 1);
    std::size_t rows = 0, cols = 0;
    {
        std::istringstream ds(line);
        long long r = -1, c = -1;
        std::string extra;
        if (!(ds >> r >> c) || (ds >> extra) || r < 1 || c < 1)
            throw ParseError("malformed dimension line", sc.line());
        rows = static_cast<std::size_t>(r);
        cols = static_cast<std::size_t>(c);
    }

    DenseMatrix a(rows, cols);
    std::size_t count = 0;
    const std::size_t total = rows * cols;
    while (count < total) {
        if (!sc.next_content_line(line))
            throw ParseError("file ends after " + std::to_string(count) + " of " +
                                 std::to_string(total) + " entries",
                             sc.line() + 1);
        std::istringstream es(line);
        std::string token;
        while (es >> token) {
            if (count >= total) throw ParseError("more entries than rows*cols", sc.line());
            char* end = nullptr;
            const double value = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0')
                throw ParseError("invalid numeric entry '" + token + "'", sc.line());
            // column-major file order -> (row, col) in row-major storage
            a(count % rows, count / rows) = value;
            ++count;
        }
    }
    if (sc.next_content_line(line)) throw ParseError("more entries than rows*cols", sc.line());
    return a;
}

}  // namespace

DenseMatrix read_matrix(std::istream& in) { return read_array(in); }

DenseVector read_vector(std::istream& in) {
    const DenseMatrix a = read_array(in);
    if (a.cols() != 1) throw ParseError("vector file must be an n x 1 array", 2);
    DenseVector v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, 0);
    return v;
}

DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return read_matrix(in);
}

DenseVector read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return read_vector(in);
}

void write_matrix(std::ostream& out, const DenseMatrix& a) {
    out << "%%MatrixMarket matrix array real general\n";
    out << a.rows() << " " << a.cols() << "\n";
    char buf[40];
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
            out << buf << "\n";
        }
}

void write_vector(std::ostream& out, const DenseVector& v) {
    DenseMatrix a(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) a(i, 0) = v[i];
    write_matrix(out, a);
}

void write_matrix_file(const std::string& path, const DenseMatrix& a) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
    write_matrix(out, a);
}

void write_vector_file(const std::string& path, const DenseVector& v) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
    write_vector(out, v);
}

}  // namespace abslin
