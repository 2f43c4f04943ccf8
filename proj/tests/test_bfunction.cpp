#include <cmath>

#include "doctest.h"

#include "hbl/bfunction.hpp"
#include "hbl/errors.hpp"
#include "hbl/io.hpp"
#include "hbl/polytope.hpp"

using namespace hbl;

namespace {

BFunction load_b(const char* name) {
  return parse_bfunction_file(std::string(HBL_CONFIG_DIR) + "/" + name);
}

std::vector<std::vector<Rat>> vertices_of(const char* name) {
  const HBLInstance inst = parse_instance_file(std::string(HBL_CONFIG_DIR) + "/" + name).inst;
  const SubspaceList E = generate_subspace_list(inst, inst.closure_depth);
  return enumerate_vertices(build_constraints(inst, E));
}

BFunction third(long long p, long long q) {
  return BFunction::monomial({Rat(p, q), Rat(p, q), Rat(p, q)});
}

}  // namespace

TEST_CASE("monomial evaluation with zero-argument conventions") {
  const BFunction b = BFunction::monomial({Rat(1, 2), Rat(3, 4), Rat(3, 4)}, 2.0);
  CHECK(eval_b3(b, 4.0, 16.0, 1.0) == doctest::Approx(2.0 * 2.0 * 8.0));
  CHECK(eval_b3(b, 0.0, 1.0, 1.0) == 0.0);
  // exponent 0 means the factor is absent even at 0
  const BFunction flat = BFunction::monomial({Rat(0), Rat(1), Rat(0)}, 3.0);
  CHECK(eval_b3(flat, 0.0, 5.0, 0.0) == doctest::Approx(15.0));
}

TEST_CASE("sums and rho compositions evaluate pointwise") {
  const BFunction two = load_b("b_two_monomials.json");
  const double y1 = 4.0, y2 = 9.0, y3 = 25.0;
  const double expect = std::pow(y1, 0.5) * std::pow(y2, 0.75) * std::pow(y3, 0.75) +
                        std::pow(y1, 0.75) * std::pow(y2, 0.5) * std::pow(y3, 0.75);
  CHECK(eval_b3(two, y1, y2, y3) == doctest::Approx(expect).epsilon(1e-14));

  const BFunction mn = load_b("b_min_product.json");
  CHECK(eval_b3(mn, 2.0, 3.0, 5.0) == doctest::Approx(5.0));
  CHECK(eval_b3(mn, 2.0, 3.0, 7.0) == doctest::Approx(6.0));

  const BFunction mx = BFunction::rho_composed(
      BFunction::RhoKind::Max,
      {BFunction::monomial({Rat(1), Rat(0), Rat(0)}), BFunction::monomial({Rat(0), Rat(1), Rat(0)})});
  CHECK(eval_b3(mx, 2.0, 3.0, 99.0) == doctest::Approx(3.0));

  const BFunction pm = BFunction::rho_composed(
      BFunction::RhoKind::PowerMean,
      {BFunction::monomial({Rat(1), Rat(0), Rat(0)}), BFunction::monomial({Rat(0), Rat(1), Rat(0)})},
      {0.5, 0.5}, 2.0);
  CHECK(eval_b3(pm, 6.0, 8.0, 1.0) == doctest::Approx(std::sqrt(0.5 * 36 + 0.5 * 64)));
}

TEST_CASE("the integral family hits its closed form at the all-ones point") {
  // At y = (1,1,1) every integrand value is 1, so the integral is the
  // parameter length 1/3; Simpson is exact for constants.
  const BFunction fam = load_b("b_integral_family.json");
  CHECK(eval_b3(fam, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // t-dependence separates: y = (e,e,1) gives int e^{(2/3 - t/2) + (2/3 - t/2)} dt
  const double direct = eval_b3(fam, std::exp(1.0), std::exp(1.0), 1.0);
  double simpson = 0.0;
  {
    const int n = 20001;
    const double lo = -1.0 / 6.0, hi = 1.0 / 6.0, h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double t = lo + h * i;
      const double v = std::exp(2.0 * (2.0 / 3.0 - 0.5 * t));
      simpson += v * ((i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    simpson *= h / 3.0;
  }
  CHECK(direct == doctest::Approx(simpson).epsilon(1e-10));
  // any zero argument collapses the family to 0
  CHECK(eval_b3(fam, 0.0, 2.0, 2.0) == 0.0);
}

TEST_CASE("box differences have closed forms for product monomials") {
  // B = y1 y2 y3: difference telescopes to the volume of the rectangle.
  const BFunction prod = third(1, 1);
  CHECK(delta3(prod, {1, 4, 2, 5, 0, 2}) == doctest::Approx(3.0 * 3.0 * 2.0).epsilon(1e-12));
  // B = sqrt(y1 y2 y3) on [1,4]^3: (2-1)^3 = 1.
  CHECK(delta3(third(1, 2), {1, 4, 1, 4, 1, 4}) == doctest::Approx(1.0).epsilon(1e-12));
  // the min-product fixture goes negative on [1,2]^3
  CHECK(delta3(load_b("b_min_product.json"), {1, 2, 1, 2, 1, 2}) ==
        doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("box-difference screening accepts monomials and rejects the min fixture") {
  SamplerSpec sp;
  sp.n = 2000;
  sp.seed = 5;
  for (const char* name : {"b_young_monomial.json", "b_two_monomials.json"}) {
    const CheckReport r = check_delta3_nonneg(load_b(name), sp);
    CHECK(r.pass);
    CHECK(r.worst >= -1e-9);
    CHECK(r.witness.empty());
  }
  const CheckReport bad = check_delta3_nonneg(load_b("b_min_product.json"), sp);
  CHECK(!bad.pass);
  CHECK(bad.worst < 0.0);
  REQUIRE(bad.witness.size() == 6);
  // witness replays to the reported worst value
  const Rectangle3 R{bad.witness[0], bad.witness[1], bad.witness[2],
                     bad.witness[3], bad.witness[4], bad.witness[5]};
  CHECK(delta3(load_b("b_min_product.json"), R) == doctest::Approx(bad.worst));
}

TEST_CASE("polytope growth bounds hold inside and fail outside") {
  const auto verts = vertices_of("young.json");
  SamplerSpec sp;
  sp.n = 4000;
  sp.seed = 9;

  const BFunction inside = load_b("b_young_monomial.json");
  const CheckReport up = check_polytope_conditions(inside, verts, PolytopeCheckMode::Max, sp);
  const CheckReport dn = check_polytope_conditions(inside, verts, PolytopeCheckMode::Min, sp);
  CHECK(up.pass);
  CHECK(dn.pass);
  // (2/3,2/3,2/3) = (1/3)(0,1,1)+(1/3)(1,0,1)+(1/3)(1,1,0): both bounds tight
  CHECK(up.worst == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dn.worst == doctest::Approx(1.0).epsilon(1e-12));

  const BFunction outside = load_b("b_out_of_polytope.json");
  const CheckReport bad = check_polytope_conditions(outside, verts, PolytopeCheckMode::Max, sp);
  CHECK(!bad.pass);
  // the diagonal ray lambda = e^{10}(1,1,1) drives the ratio to e^{10}
  CHECK(bad.worst >= std::exp(10.0) * (1.0 - 1e-12));
  CHECK(!bad.witness.empty());
}

TEST_CASE("degree scaling matches the ambient dimensions") {
  // young: d = 2, all d_j = 1; a degree-2 monomial satisfies
  // B(R y) = R^2 B(y) exactly.
  SamplerSpec sp;
  sp.n = 1000;
  sp.seed = 3;
  const CheckReport ok = check_scaling(load_b("b_young_monomial.json"), 2, {1, 1, 1}, sp);
  CHECK(ok.pass);
  CHECK(ok.worst == doctest::Approx(1.0).epsilon(1e-9));
  // degree-3 monomial fails the same test
  const CheckReport bad = check_scaling(load_b("b_out_of_polytope.json"), 2, {1, 1, 1}, sp);
  CHECK(!bad.pass);
}

TEST_CASE("outer combination rules: min passes, max breaks superadditivity") {
  SamplerSpec sp;
  sp.n = 2000;
  sp.seed = 17;
  {
    const auto [scale, super] = check_rho_conditions(load_b("b_min_product.json"), sp);
    CHECK(scale.pass);
    CHECK(scale.worst == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(super.pass);
    CHECK(super.worst <= 1e-9);
  }
  {
    const BFunction mx = BFunction::rho_composed(
        BFunction::RhoKind::Max, {BFunction::monomial({Rat(1), Rat(0), Rat(0)}),
                                  BFunction::monomial({Rat(0), Rat(1), Rat(0)})});
    const auto [scale, super] = check_rho_conditions(mx, sp);
    CHECK(scale.pass);
    CHECK(!super.pass);
    // the (e1, e2) probe: max(1,0) + max(0,1) = 2 > max(1,1) = 1, defect 1
    CHECK(super.worst >= 1.0 - 1e-12);
  }
  // rho checks demand an outer combination node
  CHECK_THROWS_AS(check_rho_conditions(third(1, 1), sp), input_error);
}

TEST_CASE("reports carry their sampler provenance") {
  SamplerSpec sp;
  sp.n = 500;
  sp.seed = 12345;
  const CheckReport r = check_delta3_nonneg(third(2, 3), sp);
  CHECK(r.samples == 500);
  CHECK(r.seed == 12345);
  CHECK(r.condition == "delta3-nonnegative");
}
