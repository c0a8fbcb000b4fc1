#pragma once

// Matrix Market array-format reader/writer. Entries are stored column-major
// in the file, as the format prescribes; the reader transposes into our
// row-major matrices on ingest. Values are written with 17 significant
// digits, which round-trips doubles exactly.

#include <iosfwd>
#include <string>

#include "abslin/core.hpp"

namespace abslin {

DenseMatrix read_matrix(std::istream& in);
DenseVector read_vector(std::istream& in);  // n x 1 arrays only

DenseMatrix read_matrix_file(const std::string& path);
DenseVector read_vector_file(const std::string& path);

void write_matrix(std::ostream& out, const DenseMatrix& a);
void write_vector(std::ostream& out, const DenseVector& v);

void write_matrix_file(const std::string& path, const DenseMatrix& a);
void write_vector_file(const std::string& path, const DenseVector& v);

}  // namespace abslin
