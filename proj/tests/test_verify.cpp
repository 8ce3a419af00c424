#include "doctest.h"

#include <set>

#include "regaff/verify.hpp"

using namespace regaff;

namespace {

// The four translations of AGL_2(2).
std::vector<AffineElem> agl22_translations() {
  const Field& f2 = Field::finite(2);
  std::vector<AffineElem> out;
  for (const Vec& v : all_points(f2, 2)) out.push_back(AffineElem::translation(v));
  return out;
}

std::set<AffineElem> as_set(const std::vector<AffineElem>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("regularity of translation groups and their mutilations") {
  const Field& f2 = Field::finite(2);
  auto tr = agl22_translations();
  CHECK(check_regular(tr, f2, 2));

  std::string w;
  auto broken = tr;
  broken.pop_back();  // not closed any more (and wrong order)
  CHECK(!check_regular(broken, f2, 2, &w));
  CHECK(w.find("not closed") != std::string::npos);

  // Wrong order but closed: the trivial group in dimension 2.
  std::vector<AffineElem> tiny{AffineElem::identity(f2, 2)};
  CHECK(!check_regular(tiny, f2, 2, &w));
  CHECK(w.find("expected 4") != std::string::npos);

  // Closed, right order, duplicate first rows: Tr x {I} padded with a
  // linear element sharing the identity's first row.
  Mat lin = Mat::identity(f2, 3);
  lin(1, 2) = f2.one();
  std::vector<AffineElem> dup{
      AffineElem::identity(f2, 2), AffineElem::from_matrix(lin),
      AffineElem::translation(Vec::from_ints(f2, {0, 1})),
      AffineElem::translation(Vec::from_ints(f2, {0, 1})) *
          AffineElem::from_matrix(lin)};
  CHECK(!check_regular(dup, f2, 2, &w));
  CHECK(w.find("share the first row") != std::string::npos);

  CHECK(check_regular(close_group({hegedus_agl32().first,
                                   hegedus_agl32().second}),
                      f2, 3));
  CHECK_THROWS_AS(check_regular({AffineElem::identity(Field::rationals(), 1)},
                                Field::rationals(), 1),
                  std::domain_error);
}

TEST_CASE("translation subgroup of a plain set") {
  auto tr = agl22_translations();
  CHECK(as_set(translation_subgroup(tr)) == as_set(tr));
  auto h = close_group({hegedus_agl32().first, hegedus_agl32().second});
  auto fixed = translation_subgroup(h);
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0].is_identity());
}

TEST_CASE("translation scan via the v = 0 shortcut") {
  CHECK(translation_subgroup(build_rw(Field::finite(3), 4)).size() == 1);

  const Field& f4 = Field::finite(2, 2);
  auto two = translation_subgroup(build_rw(f4, 5, {f4.one()}));
  CHECK(two.size() == 2);
  for (const AffineElem& g : two) CHECK(g.is_translation());

  CHECK_THROWS_AS(translation_subgroup(build_rw(Field::rationals(), 4)),
                  std::domain_error);
}

TEST_CASE("shortcut equals the brute-force scan for every small case") {
  const Field& f4 = Field::finite(2, 2);
  std::vector<RegularSubgroupDesc> cases;
  cases.push_back(build_rw(Field::finite(2), 3));
  cases.push_back(build_rw(Field::finite(3), 4));
  cases.push_back(build_rw(f4, 5, {f4.one()}));
  cases.push_back(build_rw(Field::finite(2), 6, {Field::finite(2).one()}));
  cases.push_back(build_rw(f4, 6, {f4.one(), f4.element(2)}));
  for (const RegularSubgroupDesc& r : cases) {
    CHECK(r.order() <= 4096);
    CHECK(as_set(translation_subgroup(r)) ==
          as_set(translation_subgroup(r.elements())));
  }
}

TEST_CASE("translations realize W additively") {
  CHECK(translations_match_w(build_rw(Field::finite(5), 4)));

  const Field& f8 = Field::finite(2, 3);
  std::vector<FieldElem> all_of_f8{f8.one(), f8.element(2), f8.element(4)};
  RegularSubgroupDesc full = build_rw(f8, 5, all_of_f8);
  CHECK(translations_match_w(full));
  CHECK(translation_subgroup(full).size() == 8);

  const Field& f9 = Field::finite(3, 2);
  RegularSubgroupDesc r9 = build_rw(f9, 4, {f9.one()});
  CHECK(translations_match_w(r9));
  auto tr = translation_subgroup(r9);
  CHECK(tr.size() == 3);
  for (const AffineElem& g : tr) {
    CHECK(g * g * g == AffineElem::identity(f9, 4));  // exponent 3
    bool order_divides_two = g * g == AffineElem::identity(f9, 4);
    CHECK(order_divides_two == g.is_identity());
  }
}

TEST_CASE("full suite on small constructions, exhaustively") {
  VerifyReport r8 = full_suite(build_rw(Field::finite(2), 3));
  CHECK(r8.all_ok());
  CHECK(r8.order == 8);
  CHECK(r8.closure_exhaustive);
  CHECK(r8.sweeps_exhaustive);
  CHECK(r8.translations.size() == 1);
  CHECK(r8.to_string().find("verdict: PASS") != std::string::npos);
  CHECK(r8.to_string().find("closure: ok (exhaustive)") != std::string::npos);

  VerifyReport r625 = full_suite(build_rw(Field::finite(5), 4));
  CHECK(r625.all_ok());
  CHECK(r625.order == 625);
  CHECK(r625.closure_exhaustive);  // 625 <= 1024
  CHECK(r625.sweeps_exhaustive);
}

TEST_CASE("full suite samples the pair sweep above the all-pairs bound") {
  VerifyReport rep = full_suite(build_rw(Field::finite(2, 2), 6), 42);
  CHECK(rep.all_ok());
  CHECK(rep.order == 4096);
  CHECK(rep.sweeps_exhaustive);       // 4096 <= 2^20: elements all visited
  CHECK(!rep.closure_exhaustive);     // 4096^2 pairs: sampled
  CHECK(rep.seed == 42);
  CHECK(rep.trials == 4096);
  CHECK(rep.to_string().find("sampled seed=42") != std::string::npos);
}

TEST_CASE("full suite with a prescribed kernel") {
  const Field& f8 = Field::finite(2, 3);
  VerifyReport rep = full_suite(build_rw(f8, 5, {f8.one(), f8.element(2)}));
  CHECK(rep.all_ok());
  CHECK(rep.order == 32768);
  CHECK(rep.translations.size() == 4);
  CHECK(rep.sweeps_exhaustive);
  CHECK(!rep.closure_exhaustive);
}

TEST_CASE("full suite over the rationals is sampled end to end") {
  VerifyReport rep = full_suite(build_rw(Field::rationals(), 4), 7);
  CHECK(rep.all_ok());
  CHECK(rep.order == 0);
  CHECK(!rep.sweeps_exhaustive);
  CHECK(!rep.closure_exhaustive);
  CHECK(rep.translations.size() == 1);
  CHECK(rep.translations[0].is_identity());
  CHECK(rep.to_string().find("order: infinite") != std::string::npos);
}

TEST_CASE("full suite is deterministic for a fixed seed") {
  RegularSubgroupDesc r = build_rw(Field::rationals(), 4);
  CHECK(full_suite(r, 99).to_string() == full_suite(r, 99).to_string());
}

TEST_CASE("set verification accepts the doubled order-8 group") {
  auto [g1, g2] = hegedus_agl32();
  auto h = close_group({g1, g2});
  VerifyReport rep = verify_set(h, Field::finite(2), 3);
  CHECK(rep.all_ok());
  CHECK(rep.order == 8);
  CHECK(rep.translations.size() == 1);

  auto dp = direct_product(h, h);
  VerifyReport rep2 = verify_set(dp, Field::finite(2), 6);
  CHECK(rep2.all_ok());
  CHECK(rep2.order == 64);
  CHECK(rep2.closure_exhaustive);
  CHECK(rep2.translations.size() == 1);
}

TEST_CASE("set verification pinpoints a corrupted element") {
  auto [g1, g2] = hegedus_agl32();
  auto h = close_group({g1, g2});
  // Replace one non-identity element with a translation not in the group.
  const Field& f2 = Field::finite(2);
  for (AffineElem& g : h)
    if (!g.is_identity()) {
      g = AffineElem::translation(Vec::from_ints(f2, {1, 0, 0}));
      break;
    }
  VerifyReport rep = verify_set(h, f2, 3);
  CHECK(!rep.all_ok());
  CHECK(!rep.closure);
  CHECK(!rep.failures.empty());
  CHECK(rep.to_string().find("verdict: FAIL") != std::string::npos);
  CHECK(rep.to_string().find("witness:") != std::string::npos);
}

TEST_CASE("projection to the linear part is injective exactly off W") {
  // Translation-free: pi is injective (distinct linear parts).
  auto elems = build_rw(Field::finite(3), 4).elements();
  std::set<Mat> lins;
  for (const AffineElem& g : elems) lins.insert(g.linear_part());
  CHECK(lins.size() == elems.size());

  // |W| = 2: pi is exactly 2-to-1.
  const Field& f4 = Field::finite(2, 2);
  auto elems2 = build_rw(f4, 5, {f4.one()}).elements();
  std::set<Mat> lins2;
  for (const AffineElem& g : elems2) lins2.insert(g.linear_part());
  CHECK(lins2.size() * 2 == elems2.size());
}
