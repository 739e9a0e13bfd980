#include <sstream>

#include "doctest.h"
#include "suncolor/tensor_io.hpp"

using namespace suncolor;

TEST_CASE("tensor file format header and lines") {
  const GeneratorBasis basis = build_basis(2);
  std::ostringstream out;
  print_tensors(out, extract_f(basis), extract_d(basis));
  CHECK(out.str() == "sun-tensors v1\nN 2\nf 1 2 3 1\n");
}

TEST_CASE("tensor file round-trip is bit-exact for n = 2..5") {
  for (int n = 2; n <= 5; ++n) {
    const GeneratorBasis basis = build_basis(n);
    const Rank3Tensor f = extract_f(basis);
    const Rank3Tensor d = extract_d(basis);
    std::ostringstream out;
    print_tensors(out, f, d);
    std::istringstream in(out.str());
    const auto [f2, d2] = parse_tensors(in);
    CHECK(f2 == f);  // exact double equality via canonical maps
    CHECK(d2 == d);
    std::ostringstream again;
    print_tensors(again, f2, d2);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("parser rejects malformed input") {
  auto expect_throw = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_tensors(in), std::invalid_argument);
  };
  expect_throw("sun-tensors v2\nN 3\n");
  expect_throw("N 3\n");
  expect_throw("sun-tensors v1\nN 1\n");
  expect_throw("sun-tensors v1\nN 3\nf 2 1 3 1.0\n");   // non-canonical order
  expect_throw("sun-tensors v1\nN 3\nq 1 2 3 1.0\n");   // unknown tag
  expect_throw("sun-tensors v1\nN 3\nf 1 2 3\n");       // missing value
  expect_throw("sun-tensors v1\nN 3\nf 1 2 3 1.0 9\n"); // trailing data
  expect_throw("sun-tensors v1\nN 3\nf 1 2 99 1.0\n");  // out of range
}
