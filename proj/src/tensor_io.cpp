#include "suncolor/tensor_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace suncolor {

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_one(std::ostream& out, const Rank3Tensor& t, char tag) {
  for (const auto& [key, value] : t.nonzeros()) {
    out << tag << ' ' << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << format_value(value)
        << '\n';
  }
}

}  // namespace

void print_tensors(std::ostream& out, const Rank3Tensor& f, const Rank3Tensor& d) {
  if (f.n() != d.n()) throw std::invalid_argument("print_tensors: mismatched n");
  out << "sun-tensors v1\n";
  out << "N " << f.n() << '\n';
  print_one(out, f, 'f');
  print_one(out, d, 'd');
}

std::pair<Rank3Tensor, Rank3Tensor> parse_tensors(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "sun-tensors v1") {
    throw std::invalid_argument("parse_tensors: missing 'sun-tensors v1' header");
  }
  if (!std::getline(in, line)) throw std::invalid_argument("parse_tensors: missing N line");
  int n = 0;
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word >> n) || word != "N" || n < 2) {
      throw std::invalid_argument("parse_tensors: bad N line: '" + line + "'");
    }
  }
  Rank3Tensor f(n, TensorSymmetry::antisymmetric);
  Rank3Tensor d(n, TensorSymmetry::symmetric);
  std::size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    int a = 0, b = 0, c = 0;
    double value = 0.0;
    if (!(ls >> tag >> a >> b >> c >> value) || (tag != "f" && tag != "d")) {
      throw std::invalid_argument("parse_tensors: malformed line " + std::to_string(lineno) +
                                  ": '" + line + "'");
    }
    std::string extra;
    if (ls >> extra) {
      throw std::invalid_argument("parse_tensors: trailing data on line " +
                                  std::to_string(lineno));
    }
    const bool canonical = tag == "f" ? (a < b && b < c) : (a <= b && b <= c);
    if (!canonical) {
      throw std::invalid_argument("parse_tensors: non-canonical triple on line " +
                                  std::to_string(lineno));
    }
    (tag == "f" ? f : d).set(a, b, c, value);
  }
  return {std::move(f), std::move(d)};
}

}  // namespace suncolor
