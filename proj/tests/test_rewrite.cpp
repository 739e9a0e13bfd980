#include <random>

#include "doctest.h"
#include "suncolor/oracle.hpp"
#include "suncolor/rewrite.hpp"
#include "test_util.hpp"

using namespace suncolor;

namespace {

ColorExpr golden(const std::string& text) { return canonicalize(parse(text)); }

void check_exact(const std::string& input, const std::string& expected) {
  CAPTURE(input);
  CAPTURE(expected);
  const ColorExpr parsed = parse(input);
  const ColorExpr result = simplify(parsed);
  CHECK(result == testutil::golden_with_sorts(expected, free_indices(parsed)));
  // The safety net: result must also agree numerically with the input.
  const SamplingVerdict verdict = equal_by_sampling(parsed, result, {2, 3, 4, 5}, 30, 1e-9, 3);
  CAPTURE(verdict.worst.residual);
  CHECK(verdict.equal);
}

void check_sound(const std::string& input, const RewriteOptions& opts = {},
                 const std::vector<int>& ns = {2, 3, 4, 5}) {
  CAPTURE(input);
  const ColorExpr before = parse(input);
  const ColorExpr after = simplify(before, opts);
  const SamplingVerdict verdict = equal_by_sampling(before, after, ns, 30, 1e-9, 17);
  CAPTURE(print(after));
  CAPTURE(verdict.worst.residual);
  CHECK(verdict.equal);
}

}  // namespace

TEST_CASE("defining traces close exactly") {
  check_exact("Tr[T(a)T(b)]", "(1/2)*delta(a,b)");
  check_exact("Tr[T(a)T(a)]", "(NN^2-1)/2");
  check_exact("Tr[T(a)T(b)T(c)]", "(1/4)*d(a,b,c) + (i/4)*f(a,b,c)");
  check_exact("Tr[T(a)T(b)T(a)T(c)]", "(-1/(4*NN))*delta(b,c)");
}

TEST_CASE("tensor double contractions reduce exactly") {
  check_exact("f(a,b,c)*f(a,b,d)", "NN*delta(c,d)");
  check_exact("d(a,b,c)*d(a,b,d)", "((NN^2-4)/NN)*delta(c,d)");
  check_exact("f(a,b,c)*d(a,b,d)", "0");
  check_exact("delta(a,a)", "NN^2 - 1");
  check_exact("f(a,a,b)", "0");
  check_exact("d(a,a,b)", "0");
}

TEST_CASE("adjoint trace table reduces exactly") {
  check_exact("TrAdj[F(a)]", "0");
  check_exact("TrAdj[D(a)]", "0");
  check_exact("TrAdj[F(a)D(b)]", "0");
  check_exact("TrAdj[F(a)F(b)]", "NN*delta(a,b)");
  check_exact("TrAdj[D(a)D(b)]", "((NN^2-4)/NN)*delta(a,b)");
  check_exact("TrAdj[F(a)F(b)F(c)]", "((i*NN)/2)*f(a,b,c)");
  check_exact("TrAdj[D(a)F(b)F(c)]", "(NN/2)*d(a,b,c)");
  check_exact("TrAdj[D(a)D(b)F(c)]", "((i*(NN^2-4))/(2*NN))*f(a,b,c)");
  check_exact("TrAdj[D(a)D(b)D(c)]", "((NN^2-12)/(2*NN))*d(a,b,c)");
}

TEST_CASE("contracted four-F trace reduces exactly") {
  check_exact("TrAdj[F(a)F(b)F(a)F(c)]", "((1/2)*NN^2)*delta(b,c)");
}

TEST_CASE("element-level contractions") {
  check_exact("F(a;b,c)", "(-i)*f(a,b,c)");
  check_exact("D(a;b,c)", "d(a,b,c)");
  check_exact("d(a,b,c)*F(b;x,e)*F(c;e,y)", "(NN/2)*d(a,x,y)");
  check_exact("T(a;i,j)*T(a;k,l)",
              "(1/2)*delta(i,l)*delta(j,k) - (1/(2*NN))*delta(i,j)*delta(k,l)");
  check_exact("T(a;i,j)*T(b;j,k)*delta(a,b)",
              "((NN^2-1)/(2*NN))*delta(i,k)");
  check_exact("T(a;i,i)", "0");
  check_exact("T(a;i,j)*Tr[T(a)T(b)]", "(1/2)*T(b;i,j)");
}

TEST_CASE("reduce_defining removes every defining trace") {
  const ColorExpr out = reduce_defining(parse("Tr[T(a)T(b)T(c)T(d)T(e)]*Tr[T(a)T(d)]"));
  for (const Term& term : out.terms) {
    for (const Factor& f : term.factors) {
      CHECK_FALSE(std::holds_alternative<TrDef>(f));
    }
  }
  check_sound("Tr[T(a)T(b)T(c)T(d)T(e)]*Tr[T(a)T(d)]");
}

TEST_CASE("expand_adjoint removes adjoint structures") {
  const ColorExpr out = expand_adjoint(parse("TrAdj[F(a)D(b)F(c)D(e)]*F(a;b,x)*D(e;c,y)"));
  for (const Term& term : out.terms) {
    for (const Factor& f : term.factors) {
      CHECK_FALSE(std::holds_alternative<TrAdj>(f));
      CHECK_FALSE(std::holds_alternative<FElem>(f));
      CHECK_FALSE(std::holds_alternative<DElem>(f));
    }
  }
}

TEST_CASE("contract requires trace-free input") {
  CHECK_THROWS_AS(contract(parse("Tr[T(a)T(b)]")), std::invalid_argument);
  CHECK_THROWS_AS(contract(parse("TrAdj[F(a)F(b)]")), std::invalid_argument);
}

TEST_CASE("triangle rule table against the oracle, all kind combinations") {
  // One closed three-cycle per f/d pattern, with scrambled slot orders.
  const std::vector<std::string> cycles = {
      "f(x,e,g)*f(y,g,t)*f(z,t,e)",
      "f(e,x,g)*f(y,g,t)*f(t,e,z)",
      "d(x,e,g)*f(y,g,t)*f(z,t,e)",
      "f(x,e,g)*d(g,y,t)*f(z,t,e)",
      "f(g,e,x)*f(y,g,t)*d(z,t,e)",
      "d(x,e,g)*d(y,g,t)*f(e,t,z)",
      "d(x,e,g)*f(t,g,y)*d(z,t,e)",
      "f(x,e,g)*d(y,g,t)*d(e,z,t)",
      "d(x,e,g)*d(y,g,t)*d(z,t,e)",
  };
  for (const std::string& text : cycles) {
    CAPTURE(text);
    const ColorExpr before = parse(text);
    const ColorExpr after = simplify(before);
    // The cycle must actually collapse to a single tensor (or vanish).
    CHECK(after.terms.size() <= 1);
    const SamplingVerdict verdict = equal_by_sampling(before, after, {2, 3, 4, 5}, 40, 1e-9, 23);
    CAPTURE(print(after));
    CAPTURE(verdict.worst.residual);
    CHECK(verdict.equal);
  }
}

TEST_CASE("ff pair expansion is sound and triggers only as a last resort") {
  const ColorExpr before = parse("f(a,b,e)*f(c,d,e)");
  const ColorExpr after = simplify(before);
  // Expanded into deltas and d-pairs: no f factors left.
  for (const Term& term : after.terms) {
    for (const Factor& f : term.factors) CHECK_FALSE(std::holds_alternative<F3>(f));
  }
  const SamplingVerdict verdict = equal_by_sampling(before, after, {2, 3, 4, 5}, 40, 1e-9, 29);
  CHECK(verdict.equal);
}

TEST_CASE("four-generator defining trace simplifies soundly") {
  check_sound("Tr[T(a)T(b)T(c)T(d)]");
  check_sound("Tr[T(a)T(b)T(c)T(d)] - (1/(4*NN))*delta(a,b)*delta(c,d)");
}

TEST_CASE("simplify is idempotent on mixed expressions") {
  const std::vector<std::string> corpus = {
      "TrAdj[F(a)F(b)F(a)F(c)]",
      "Tr[T(a)T(b)T(c)]*f(a,b,x)",
      "d(a,b,c)*TrAdj[D(a)D(b)]",
      "T(a;i,j)*T(a;j,k)",
      "f(a,b,e)*f(c,d,e)*delta(a,c)",
  };
  for (const std::string& text : corpus) {
    CAPTURE(text);
    const ColorExpr once = simplify(parse(text));
    CHECK(simplify(once) == once);
  }
}

TEST_CASE("blow-up cap leaves pairs unexpanded but sound") {
  RewriteOptions opts;
  opts.blowup_cap = 2;  // too small to allow any ff expansion
  const ColorExpr before = parse("f(a,b,e)*f(c,d,e)");
  const ColorExpr after = simplify(before, opts);
  bool has_f = false;
  for (const Term& term : after.terms) {
    for (const Factor& f : term.factors) has_f = has_f || std::holds_alternative<F3>(f);
  }
  CHECK(has_f);  // pair left alone
  CHECK(equal_by_sampling(before, after, {2, 3, 4}, 20, 1e-9, 31).equal);
}

TEST_CASE("rule log is deterministic and replays the derivation") {
  RewriteOptions opts;
  std::vector<RuleApplication> log1, log2;
  opts.log = &log1;
  const ColorExpr out1 = simplify(parse("Tr[T(a)T(b)T(a)T(c)]"), opts);
  opts.log = &log2;
  const ColorExpr out2 = simplify(parse("Tr[T(a)T(b)T(a)T(c)]"), opts);
  CHECK(out1 == out2);
  REQUIRE(log1.size() == log2.size());
  CHECK(!log1.empty());
  for (std::size_t k = 0; k < log1.size(); ++k) {
    CHECK(log1[k].rule_id == log2[k].rule_id);
    CHECK(log1[k].before == log2[k].before);
    CHECK(log1[k].after == log2[k].after);
  }
  CHECK(log1.front().rule_id == "fierz-intra");
}

TEST_CASE("n3 pack: off by default, sound at N=3 when enabled") {
  const ColorExpr before = parse("d(a,b,e)*d(c,d,e)");
  // Without the pack the dd pair has no applicable rule.
  const ColorExpr plain = simplify(before);
  CHECK(plain == canonicalize(before));
  // With the pack it expands into deltas and ff pairs, valid at N=3 only.
  RewriteOptions opts;
  opts.n3_pack = true;
  const ColorExpr packed = simplify(before, opts);
  CHECK_FALSE(packed == plain);
  CHECK(equal_by_sampling(before, packed, {3}, 60, 1e-9, 37).equal);
  CHECK_FALSE(equal_by_sampling(before, packed, {4}, 60, 1e-9, 37).equal);
}

TEST_CASE("n3 pack golden: dd pair in the delta/ff basis") {
  RewriteOptions opts;
  opts.n3_pack = true;
  const ColorExpr packed = simplify(parse("d(a,b,e)*d(c,d,e)"), opts);
  const ColorExpr expected = golden(
      "(1/3)*delta(a,c)*delta(b,d) + (1/3)*delta(a,d)*delta(b,c) - "
      "(1/3)*delta(a,b)*delta(c,d) + (1/3)*f(a,c,e)*f(b,d,e) + (1/3)*f(a,d,e)*f(b,c,e)");
  CHECK(packed == expected);
}

TEST_CASE("random tensor-network soundness sweep") {
  std::mt19937_64 rng(99);
  const std::vector<std::string> labels = {"a", "b", "c", "p", "q", "r", "s", "u"};
  for (int round = 0; round < 30; ++round) {
    // Build a random product of 2-4 f/d factors over a small label pool;
    // validity (each label at most twice) is enforced by construction.
    std::vector<std::string> pool;
    for (const std::string& l : labels) {
      pool.push_back(l);
      pool.push_back(l);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    const int factors = 2 + static_cast<int>(rng() % 3);
    std::string text;
    std::size_t cursor = 0;
    for (int k = 0; k < factors; ++k) {
      if (k > 0) text += "*";
      text += (rng() % 2 == 0) ? "f(" : "d(";
      text += pool[cursor] + "," + pool[cursor + 1] + "," + pool[cursor + 2] + ")";
      cursor += 3;
    }
    CAPTURE(text);
    ColorExpr before;
    try {
      before = parse(text);
    } catch (const ParseError&) {
      continue;  // a label landed three times; skip
    }
    const ColorExpr after = simplify(before);
    const SamplingVerdict verdict = equal_by_sampling(before, after, {2, 3, 4}, 25, 1e-9, 41);
    CAPTURE(print(after));
    CAPTURE(verdict.worst.residual);
    CHECK(verdict.equal);
  }
}

TEST_CASE("fully contracted four-F trace reduces to a scalar") {
  // sum_ab Tr(F^a F^b F^a F^b) = N^2 (N^2 - 1) / 2.
  check_exact("TrAdj[F(a)F(b)F(a)F(b)]", "(1/2)*NN^4 - (1/2)*NN^2");
  check_exact("TrAdj[F(a)F(a)]", "NN^3 - NN");
}

TEST_CASE("orthonormality as an expression difference cancels exactly") {
  check_exact("Tr[T(a)T(b)] - (1/2)*delta(a,b)", "0");
}

TEST_CASE("capped expansion leaves a sound normal form on pair chains") {
  RewriteOptions opts;  // default cap 64: four ff pairs want 4^4 = 256 terms
  std::string text;
  for (int k = 1; k <= 4; ++k) {
    if (k > 1) text += "*";
    const std::string s = std::to_string(k);
    text += "f(a" + s + ",b" + s + ",e" + s + ")*f(c" + s + ",d" + s + ",e" + s + ")";
  }
  const ColorExpr before = parse(text);
  const ColorExpr after = simplify(before, opts);
  CHECK(equal_by_sampling(before, after, {2, 3}, 15, 1e-9, 53).equal);
}
