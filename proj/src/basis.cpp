#include "svp/basis.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace svp {

std::string basis_to_string(const Basis &b) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < b.rank(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < b.dim(); ++j) {
      if (j)
        os << " ";
      os << b.rows(i, j).get_str();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

Basis basis_from_string(const std::string &text) {
  std::vector<std::vector<Int>> rows;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) ||
                     text[i] == ','))
      ++i;
  };
  skip_ws();
  if (i >= n || text[i] != '[')
    throw ParameterError("basis parse: expected leading '['");
  ++i;
  skip_ws();
  while (i < n && text[i] == '[') {
    ++i;
    std::vector<Int> row;
    skip_ws();
    while (i < n && text[i] != ']') {
      std::size_t start = i;
      if (text[i] == '+' || text[i] == '-')
        ++i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw ParameterError("basis parse: expected integer at position " +
                             std::to_string(start));
      row.emplace_back(text.substr(start, i - start));
      skip_ws();
    }
    if (i >= n)
      throw ParameterError("basis parse: unterminated row");
    ++i; // closing ']' of the row
    rows.push_back(std::move(row));
    skip_ws();
  }
  if (i >= n || text[i] != ']')
    throw ParameterError("basis parse: expected trailing ']'");
  ++i;
  skip_ws();
  if (i != n)
    throw ParameterError("basis parse: trailing garbage after basis");
  if (rows.empty())
    throw ParameterError("basis parse: no rows");
  const std::size_t d = rows[0].size();
  if (d == 0)
    throw ParameterError("basis parse: empty row");
  for (const auto &r : rows)
    if (r.size() != d)
      throw ParameterError("basis parse: ragged rows");
  Basis b(rows.size(), d);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d; ++c)
      b.rows(r, c) = rows[r][c];
  return b;
}

void write_basis_file(const std::string &path, const Basis &b) {
  std::ofstream os(path);
  if (!os)
    throw ParameterError("cannot open '" + path + "' for writing");
  os << basis_to_string(b) << "\n";
}

Basis read_basis_file(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw ParameterError("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << is.rdbuf();
  return basis_from_string(ss.str());
}

ScaledBasis scaled_from_rat(const RatMat &rows) {
  ScaledBasis sb;
  sb.denom = common_denominator(rows);
  sb.b = Basis(rows.rows(), rows.cols());
  Rat t;
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) {
      t = rows(i, j) * sb.denom;
      sb.b.rows(i, j) = t.get_num();
    }
  return sb;
}

} // namespace svp
