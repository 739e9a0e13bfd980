#ifndef SUNCOLOR_TENSOR_IO_HPP
#define SUNCOLOR_TENSOR_IO_HPP

#include <iosfwd>
#include <utility>

#include "suncolor/basis.hpp"

namespace suncolor {

/// sun-tensors v1 text format:
///   sun-tensors v1
///   N <n>
///   f <a> <b> <c> <value>     (a < b < c, canonical nonzeros)
///   d <a> <b> <c> <value>     (a <= b <= c)
/// Values carry 17 significant digits so parse(print(t)) round-trips
/// bit-exactly.
void print_tensors(std::ostream& out, const Rank3Tensor& f, const Rank3Tensor& d);

/// Parses the format above; throws std::invalid_argument on malformed
/// input (bad header, out-of-range labels, non-canonical triples).
std::pair<Rank3Tensor, Rank3Tensor> parse_tensors(std::istream& in);

}  // namespace suncolor

#endif
