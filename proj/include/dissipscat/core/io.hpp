#ifndef DISSIPSCAT_CORE_IO_HPP
#define DISSIPSCAT_CORE_IO_HPP

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dissipscat/core/types.hpp"

namespace dissipscat {

// Write-temp-then-rename so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open for write: " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Matrix/subspace text format: header "rows cols", then row-major entries,
// one complex entry per token. Tokens are either "(re,im)" or a bare real.
struct ComplexMatrixText {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> data; // row-major

    cplx& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    cplx at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

inline std::string format_complex_matrix(const ComplexMatrixText& m) {
    std::ostringstream out;
    out.precision(17);
    out << m.rows << " " << m.cols << "\n";
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            const cplx& z = m.at(r, c);
            if (c) out << " ";
            out << "(" << z.real() << "," << z.imag() << ")";
        }
        out << "\n";
    }
    return out.str();
}

inline ComplexMatrixText parse_complex_matrix(const std::string& text) {
    std::istringstream in(text);
    ComplexMatrixText m;
    if (!(in >> m.rows >> m.cols) || m.rows <= 0 || m.cols <= 0)
        throw IoError("matrix text: bad header, expected 'rows cols'");
    m.data.resize(static_cast<std::size_t>(m.rows) * m.cols);
    for (auto& z : m.data) {
        std::string tok;
        if (!(in >> tok)) throw IoError("matrix text: too few entries");
        if (!tok.empty() && tok.front() == '(') {
            std::istringstream ts(tok);
            if (!(ts >> z)) throw IoError("matrix text: bad complex token '" + tok + "'");
        } else {
            try {
                z = cplx(std::stod(tok), 0.0);
            } catch (const std::exception&) {
                throw IoError("matrix text: bad real token '" + tok + "'");
            }
        }
    }
    return m;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace dissipscat

#endif
