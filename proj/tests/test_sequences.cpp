#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "mvs/sequence.hpp"

using namespace mvs;
using nlohmann::json;

namespace {

// Independent brute-force greedy for choose_d: smallest m in [1, l(n)-1] with
// gamma^d * m/l(n) * kappa0/gamma^l_n >= target, evaluated in canonical Rat.
std::vector<Int> brute_choose_d(Sequence& l, const Rat& kappa0, const Rat& target,
                                std::size_t depth) {
  std::vector<Int> out;
  Rat gd(1), gl(1);
  for (std::size_t n = 1; n <= depth; ++n) {
    const Int ln = l.at(n);
    gl *= Rat(Int(ln - 1), ln);
    Rat rho = kappa0 / gl;
    Int chosen(-1);
    for (Int m(1); m <= ln - 1; ++m) {
      if (gd * Rat(m, ln) * rho >= target) {
        chosen = m;
        break;
      }
    }
    REQUIRE(chosen > 0);
    gd *= Rat(chosen, ln);
    out.push_back(chosen);
  }
  return out;
}

}  // namespace

TEST_CASE("constant and table sequences") {
  ConstantSeq c({Int(7)}, Int(3));
  CHECK(c.at(1) == 7);
  CHECK(c.at(2) == 3);
  CHECK(c.at(100) == 3);
  CHECK_THROWS_AS(c.at(0), domain_error);

  TableSeq t({Int(5)}, {Int(6), Int(7)});
  CHECK(t.declared_length() == 3);
  CHECK(t.at(3) == 7);
  CHECK_THROWS_AS(t.at(4), descriptor_error);
}

TEST_CASE("offset sequence and witness transfer") {
  auto base = std::make_shared<ConstantSeq>(std::vector<Int>{}, Int(5));
  OffsetSeq off(base, -1, Rat::parse("4/5"));
  CHECK(off.at(3) == 4);
  auto w = off.ratio_witness();
  REQUIRE(w.has_value());
  CHECK(w->value.str() == "4/5");
  CHECK(w->base->canonical_key() == base->canonical_key());

  auto down = std::make_shared<ConstantSeq>(std::vector<Int>{}, Int(1));
  OffsetSeq bad(down, -1, std::nullopt);
  CHECK_THROWS_AS(bad.at(1), descriptor_error);
}

TEST_CASE("choose_l worked examples") {
  // kappa = 1/2, l0 = 3: l1 = 5 (least > max(3, 1/kappa + 2 = 4) meeting the
  // product constraint), then the greedy takes Fermat-like jumps.
  ChooseLSeq a(Rat::parse("1/2"), Int(3));
  const long expect_a[] = {3, 5, 17, 257, 65537};
  for (std::size_t n = 1; n <= 5; ++n) CHECK(a.at(n) == expect_a[n - 1]);
  CHECK(a.at(6) == Int("4294967298"));

  // kappa = 2/3, l0 = 4 (the omega = 1 synthesis sequence).
  ChooseLSeq b(Rat::parse("2/3"), Int(4));
  const long expect_b[] = {4, 10, 82, 6562};
  for (std::size_t n = 1; n <= 4; ++n) CHECK(b.at(n) == expect_b[n - 1]);
}

TEST_CASE("choose_l certification invariant and witness") {
  // Minimal admissible l0 (the synthesis choice) keeps the two-sided
  // certification bound at every prefix.
  for (auto [kap, l0] : {std::pair<Rat, long>{Rat::parse("1/2"), 3},
                         std::pair<Rat, long>{Rat::parse("2/3"), 4},
                         std::pair<Rat, long>{Rat::parse("3/4"), 5},
                         std::pair<Rat, long>{Rat::parse("7/10"), 4}}) {
    ChooseLSeq l(kap, Int(l0));
    auto w = l.one_minus_inv_witness();
    REQUIRE(w.has_value());
    CHECK(*w == kap);
    Int prev(0);
    for (std::size_t n = 1; n <= 10; ++n) {
      const Int& ln = l.at(n);
      CHECK(ln >= prev);  // nondecreasing
      prev = ln;
      // 0 < gamma_n - kappa < 1/l(n): cross-multiplied on the unreduced gamma.
      Frac g = l.gamma_frac(n);
      Frac diff = g.sub(Frac(kap));
      CHECK(diff.sgn() > 0);
      CHECK(diff.cmp(Rat(Int(1), ln)) < 0);
    }
  }

  // An oversized l0 still certifies gamma_n > kappa everywhere, and the
  // two-sided bound from the greedy stage n0 on.
  ChooseLSeq big(Rat::parse("7/10"), Int(11));
  for (std::size_t n = 1; n <= 10; ++n) {
    Frac diff = big.gamma_frac(n).sub(Frac(Rat::parse("7/10")));
    CHECK(diff.sgn() > 0);
    if (n >= big.n0()) CHECK(diff.cmp(Rat(Int(1), big.at(n))) < 0);
  }
}

TEST_CASE("choose_l divisibility schedule") {
  // From index n0 on, l(n0 + j) == alpha_j (mod beta_j) with alpha = 0 for odd
  // j (beta = (j+1)/2) and alpha = 2 for even j (beta = j/2).
  ChooseLSeq l(Rat::parse("2/3"), Int(4));
  const std::size_t n0 = l.n0();
  for (std::size_t j = 1; j <= 8; ++j) {
    Int v = l.at(n0 + j);
    if (j % 2 == 1) {
      Int beta((long)((j + 1) / 2));
      CHECK(v % beta == 0);
    } else {
      Int beta((long)(j / 2));
      CHECK((v - 2) % beta == 0);
    }
  }
}

TEST_CASE("choose_l input validation") {
  CHECK_THROWS_AS(ChooseLSeq(Rat(0), Int(3)), domain_error);
  CHECK_THROWS_AS(ChooseLSeq(Rat(1), Int(3)), domain_error);
  CHECK_THROWS_AS(ChooseLSeq(Rat::parse("1/2"), Int(2)), domain_error);
  CHECK_THROWS_AS(ChooseLSeq(Rat::parse("3/4"), Int(3)), domain_error);  // 1-1/3 < 3/4
}

TEST_CASE("choose_d worked example and greedy oracle") {
  // target 1/3 over choose_l(1/2, 3): first step needs d(1)=2 since
  // 1 * (2/3) * (1/2)/(2/3) = 1/2 >= 1/3 while m=1 gives 1/4 < 1/3.
  auto l = std::make_shared<ChooseLSeq>(Rat::parse("1/2"), Int(3));
  ChooseDSeq d(l, Rat::parse("1/2"), Rat::parse("1/3"), std::nullopt);
  CHECK(d.at(1) == 2);

  // Depth 5 keeps the independent linear scan tractable (l(5) = 65537; the
  // next value is ~4.3e9 and the scan would be intractable).
  for (const char* target : {"1/3", "1/4", "2/5", "1/2"}) {
    auto lb = std::make_shared<ChooseLSeq>(Rat::parse("1/2"), Int(3));
    ChooseDSeq dd(lb, Rat::parse("1/2"), Rat::parse(target), std::nullopt);
    auto oracle = brute_choose_d(*lb, Rat::parse("1/2"), Rat::parse(target), 5);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(dd.at(n) == oracle[n - 1]);
  }
}

TEST_CASE("choose_d certification invariant") {
  auto l = std::make_shared<ChooseLSeq>(Rat::parse("2/3"), Int(4));
  ChooseDSeq d(l, Rat::parse("2/3"), Rat::parse("2/5"), std::nullopt);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Int& dn = d.at(n);
    CHECK(dn >= 1);
    CHECK(dn <= l->at(n) - 1);
    // target <= gamma^d_n rho_n < target + 1/l(n)
    Frac gr = d.gamma_rho(n);
    CHECK(gr.cmp(Rat::parse("2/5")) >= 0);
    CHECK(gr.sub(Frac(Rat::parse("2/5"))).cmp(Rat(Int(1), l->at(n))) < 0);
  }
}

TEST_CASE("choose_d pin_first") {
  auto l = std::make_shared<ChooseLSeq>(Rat::parse("2/3"), Int(4));
  ChooseDSeq d(l, Rat::parse("2/3"), Rat::parse("2/5"), Int(3));
  CHECK(d.at(1) == 3);
  // Later terms still satisfy the invariant.
  Frac gr = d.gamma_rho(6);
  CHECK(gr.cmp(Rat::parse("2/5")) >= 0);
  CHECK(gr.sub(Frac(Rat::parse("2/5"))).cmp(Rat(Int(1), l->at(6))) < 0);
  CHECK_THROWS_AS(ChooseDSeq(l, Rat::parse("2/3"), Rat::parse("2/5"), Int(9)),
                  domain_error);  // pin_first > l(1) - 1
  auto plain = std::make_shared<ConstantSeq>(std::vector<Int>{}, Int(5));
  CHECK_THROWS_AS(ChooseDSeq(plain, Rat::parse("1/2"), Rat::parse("1/3"), std::nullopt),
                  domain_error);  // no witness
}

TEST_CASE("budget enforcement") {
  ChooseLSeq l(Rat::parse("1/2"), Int(3), 64);
  CHECK_NOTHROW(l.at(6));  // 4294967298 is 33 bits
  try {
    l.at(8);  // term needs ~2^7 > 64 bits
    FAIL("expected budget_exceeded");
  } catch (const budget_exceeded& e) {
    CHECK(e.index_reached >= 6);
    CHECK(e.bits_needed > 64);
  }
}

TEST_CASE("json round trip and interning") {
  SequenceRegistry reg;
  json spec = {{"prefix", json::array()},
               {"tail", {{"kind", "choose_l"}, {"kappa", "2/3"}, {"l0", 4}}}};
  SeqPtr a = sequence_from_json(spec, reg);
  SeqPtr b = sequence_from_json(spec, reg);
  CHECK(a.get() == b.get());  // interned
  CHECK(a->to_json() == spec);

  json off = {{"prefix", json::array()},
              {"tail", {{"kind", "offset"}, {"base", spec}, {"delta", -1}}}};
  SeqPtr d1 = sequence_from_json(off, reg);
  auto w = d1->ratio_witness();
  REQUIRE(w.has_value());  // delta = -1 transfers the base witness
  CHECK(w->value.str() == "2/3");
  CHECK(w->base.get() == a.get());
  CHECK(d1->at(2) == 9);

  json tbl = {{"prefix", {2}}, {"tail", {{"kind", "table"}, {"values", {3, 4}}}}};
  SeqPtr t = sequence_from_json(tbl, reg);
  CHECK(t->at(1) == 2);
  CHECK(t->at(3) == 4);
  CHECK(t->to_json() == tbl);

  CHECK_THROWS_AS(sequence_from_json(json{{"tail", {{"kind", "nope"}}}}, reg),
                  parse_error);
  CHECK_THROWS_AS(sequence_from_json(json::array(), reg), parse_error);
}

TEST_CASE("canonical keys agree exactly when construction parameters agree") {
  SequenceRegistry reg;
  auto l1 = std::make_shared<ChooseLSeq>(Rat::parse("2/3"), Int(4));
  auto l2 = std::make_shared<ChooseLSeq>(Rat::parse("2/3"), Int(4));
  CHECK(l1->canonical_key() == l2->canonical_key());
  auto l3 = std::make_shared<ChooseLSeq>(Rat::parse("2/3"), Int(5));
  CHECK(l1->canonical_key() != l3->canonical_key());
}
