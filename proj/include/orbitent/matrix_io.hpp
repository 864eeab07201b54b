#ifndef ORBITENT_MATRIX_IO_HPP
#define ORBITENT_MATRIX_IO_HPP

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "orbitent/matcore.hpp"

namespace orbitent {

// Matrix files are JSON of the shape
//   {"d": 2, "rows": [[[re, im], [re, im]], [[re, im], [re, im]]]}
// with every complex entry a two-element [real, imaginary] pair of decimals.

inline constexpr double kHermitianFileTol = 1e-8;

inline ComplexMatrix read_complex_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("rows"))
        throw ParseError(path + ": expected object with \"d\" and \"rows\"");
    if (!doc["d"].is_number_integer() || doc["d"].get<std::int64_t>() < 1)
        throw ParseError(path + ": \"d\" must be a positive integer");
    const std::size_t d = doc["d"].get<std::size_t>();
    const auto& rows = doc["rows"];
    if (!rows.is_array() || rows.size() != d)
        throw ParseError(path + ": \"rows\" must be an array of " + std::to_string(d) + " rows");

    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != d)
            throw ParseError(path + ": row " + std::to_string(i) + " must have " +
                             std::to_string(d) + " entries");
        for (std::size_t j = 0; j < d; ++j) {
            const auto& entry = row[j];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                throw ParseError(path + ": entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") must be a [real, imaginary] pair");
            m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    try {
        return ComplexMatrix(d, [&] {
            std::vector<Complex> v(d * d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) v[i * d + j] = m(i, j);
            return v;
        }());
    } catch (const NonFiniteEntry&) {
        throw ParseError(path + ": non-finite entry");
    }
}

// Symmetrization residual beyond kHermitianFileTol is a hard error, never
// silently fixed.
inline HermitianMatrix read_hermitian_file(const std::string& path) {
    const ComplexMatrix m = read_complex_matrix(path);
    const double residual = hermiticity_residual(m);
    if (residual > kHermitianFileTol)
        throw ParseError(path + ": not Hermitian, symmetrization residual " +
                         detail::num(residual));
    return HermitianMatrix::symmetrized(m);
}

inline void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.dim(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    nlohmann::json doc{{"d", m.dim()}, {"rows", std::move(rows)}};
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hex[h & 0xf];
        h >>= 4;
    }
    return s;
}

}  // namespace orbitent

#endif
