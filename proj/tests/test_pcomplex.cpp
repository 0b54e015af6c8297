#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cayley/family.hpp"
#include "cayley/hyperbolicity.hpp"
#include "cayley/projection_complex.hpp"
#include "cayley/visual_sphere.hpp"

using namespace cayley;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

const Space& F2() {
  static Space sp = Space::free_group(2);
  return sp;
}

// Three large-translation elements with pairwise distinct axis directions.
const std::vector<Word>& family_roots() {
  static std::vector<Word> F = {power(parse_word(F2(), "a b"), 3),
                                power(parse_word(F2(), "a b^-1"), 3),
                                power(parse_word(F2(), "a^2 b"), 3)};
  return F;
}

const AxisFamily& translate_family_r2() {
  static AxisFamily fam = make_family(F2(), family_roots(), 2);
  return fam;
}

const AxisFamily& translate_family_r3() {
  static AxisFamily fam = make_family(F2(), family_roots(), 3);
  return fam;
}

// Three collinear translates of Ax((ab)^3): the base axis, its image under
// (ab)^3 b^3, and the image under the square of that element.  The middle
// axis separates the outer two.
const AxisFamily& chain_family() {
  static AxisFamily fam = [] {
    const Space& sp = F2();
    Word ab3 = power(parse_word(sp, "a b"), 3);
    Word g1 = mul(ab3, power(parse_word(sp, "b"), 3));
    Word g2 = mul(g1, g1);
    std::vector<Axis> axes = {make_axis(sp, ab3, 30), make_axis(sp, g1, ab3, 30),
                              make_axis(sp, g2, ab3, 30)};
    return make_family(sp, std::move(axes));
  }();
  return fam;
}

Int first_fellow_travel_radius(const Space& sp, const AdmissiblePath& path, Int r_max) {
  for (Int r = 0; r <= r_max; ++r)
    if (fellow_travel_check(sp, path, r).pass) return r;
  return -1;
}

}  // namespace

TEST_CASE("families deduplicate translated axes and index them by key") {
  const AxisFamily& fam = translate_family_r2();
  REQUIRE(fam.size() == 39);
  REQUIRE(fam.W == 24);
  REQUIRE(std::is_sorted(fam.ids.begin(), fam.ids.end()));
  REQUIRE(std::adjacent_find(fam.ids.begin(), fam.ids.end()) == fam.ids.end());
  for (int u = 0; u < fam.size(); ++u) REQUIRE(fam.index_of(fam.id(u)) == u);
  REQUIRE(fam.index_of("e|a b") >= 0);
  REQUIRE(fam.index_of("no such axis") == -1);

  const AxisFamily& big = translate_family_r3();
  REQUIRE(big.size() == 117);
  REQUIRE(big.W == 26);

  SECTION("bad construction inputs are rejected") {
    REQUIRE_THROWS_AS(make_family(F2(), std::vector<Word>{}, 2), SpaceError);
    REQUIRE_THROWS_AS(make_family(F2(), family_roots(), -1), SpaceError);
    REQUIRE_THROWS_AS(make_family(F2(), family_roots(), 3, -1, 1, 50), CapabilityError);
  }
}

TEST_CASE("axis to axis projections match the exhaustive nearest point scan") {
  const Space& sp = F2();
  const AxisFamily& fam = translate_family_r2();
  long long pairs = 0;
  int bad_u = -1, bad_v = -1;
  for (int u = 0; u < fam.size() && bad_u < 0; ++u)
    for (int v = 0; v < fam.size(); ++v) {
      if (u == v) continue;
      const Axis& U = fam.axes[static_cast<size_t>(u)];
      const Axis& V = fam.axes[static_cast<size_t>(v)];
      SetProjection fast = project_axis(sp, U, V);
      SetProjection full = project_set(sp, U, V.pts.begin(), V.pts.end());
      if (fast.t_lo != full.t_lo || fast.t_hi != full.t_hi ||
          fast.boundary != full.boundary || fam.proj_lo(u, v) != full.t_lo ||
          fam.proj_hi(u, v) != full.t_hi) {
        bad_u = u;
        bad_v = v;
        break;
      }
      ++pairs;
    }
  INFO("first mismatching pair: (" << bad_u << ", " << bad_v << ")");
  REQUIRE(bad_u == -1);
  REQUIRE(pairs == 39 * 38);
}

TEST_CASE("projection axioms hold at the scanned constant on translate families") {
  const AxisFamily& fam = translate_family_r2();
  REQUIRE(smallest_axiom_kappa(fam) == 4);

  AxiomReport rep = check_axioms(fam, 4);
  REQUIRE(rep.pass);
  REQUIRE(rep.proj_bound_ok);
  REQUIRE(rep.exclusion_ok);
  REQUIRE(rep.max_projection == 3);
  REQUIRE(rep.max_separator_count == 2);
  REQUIRE(rep.pairs == 39 * 38);
  REQUIRE(rep.triples == 9139);
  REQUIRE(rep.first_proj_violation.u == -1);
  REQUIRE(rep.first_excl_violation.u == -1);

  AxiomReport tight = check_axioms(fam, 0);
  REQUIRE_FALSE(tight.pass);
  REQUIRE_FALSE(tight.proj_bound_ok);
  REQUIRE(tight.first_proj_violation.u >= 0);
  REQUIRE(tight.first_proj_violation.v >= 0);
  REQUIRE(fam.proj_diameter(tight.first_proj_violation.u, tight.first_proj_violation.v) > 0);

  REQUIRE(check_axioms(translate_family_r3(), 4).pass);
  REQUIRE(check_axioms(translate_family_r3(), 4).max_separator_count == 3);
}

TEST_CASE("degenerate families satisfy the axioms vacuously") {
  Axis solo = make_axis(F2(), power(parse_word(F2(), "a b"), 3), 20);
  AxisFamily singleton = make_family(F2(), std::vector<Axis>{solo});
  REQUIRE(singleton.size() == 1);
  AxiomReport rep = check_axioms(singleton, 0);
  REQUIRE(rep.pass);
  REQUIRE(rep.pairs == 0);
  REQUIRE(rep.triples == 0);

  const AxisFamily& chain = chain_family();
  REQUIRE(chain.size() == 3);
  REQUIRE(smallest_axiom_kappa(chain) == 0);
  AxiomReport cr = check_axioms(chain, 0);
  REQUIRE(cr.pass);
  REQUIRE(cr.max_projection == 0);
  REQUIRE(cr.max_separator_count == 1);
}

TEST_CASE("separation intervals are totally ordered chains") {
  const AxisFamily& chain = chain_family();
  REQUIRE(chain.id(2) == "e|a b");
  REQUIRE(chain.pair_distance(0, 1, 2) == 7);
  REQUIRE(chain.pair_distance(1, 0, 2) == 0);
  REQUIRE(chain.pair_distance(2, 0, 1) == 0);

  IntervalChain forward = interval_set(chain, 4, 2, 1);
  REQUIRE(forward.members == std::vector<int>{2, 0, 1});
  REQUIRE(interval_sandwich_defect(chain, forward) == 0);

  IntervalChain backward = interval_set(chain, 4, 1, 2);
  REQUIRE(backward.members == std::vector<int>{1, 0, 2});

  IntervalChain adjacent = interval_set(chain, 4, 2, 0);
  REQUIRE(adjacent.members == std::vector<int>{2, 0});

  REQUIRE_THROWS_AS(interval_set(chain, 4, 1, 1), SpaceError);
  REQUIRE_THROWS_AS(interval_set(chain, 4, -1, 1), SpaceError);
}

TEST_CASE("interval order detection rejects too small thresholds") {
  const AxisFamily& fam = translate_family_r3();
  PCGraph loose = build_complex(fam, 4);
  REQUIRE_THROWS_WITH(verify_interval_paths(fam, loose),
                      ContainsSubstring("not a dichotomy"));

  PCGraph g = build_complex(fam, 6);
  IntervalPathReport rep = verify_interval_paths(fam, g);
  REQUIRE(rep.ok);
  REQUIRE(rep.pairs == 6786);
}

TEST_CASE("complex edges avoid separated pairs") {
  const AxisFamily& chain = chain_family();
  PCGraph g = build_complex(chain, 4);
  REQUIRE(g.edges == 2);
  REQUIRE(g.connected);
  REQUIRE(g.adjacent(2, 0));
  REQUIRE(g.adjacent(0, 1));
  REQUIRE_FALSE(g.adjacent(2, 1));
  REQUIRE(build_complex(chain, 8).edges == 3);

  const AxisFamily& fam = translate_family_r2();
  REQUIRE(build_complex(fam, 4).edges == 614);
  REQUIRE(build_complex(fam, 4).connected);
  REQUIRE(build_complex(fam, 9).edges == 39 * 38 / 2);

  const AxisFamily& big = translate_family_r3();
  REQUIRE(build_complex(big, 4).edges == 5286);
  PCGraph bg = build_complex(big, 6);
  REQUIRE(bg.edges == 6657);
  REQUIRE(bg.connected);
}

TEST_CASE("axes through a common point form a clique") {
  const Space& sp = F2();
  std::vector<Axis> axes;
  for (const Word& f : family_roots()) axes.push_back(make_axis(sp, f, 30));
  AxisFamily fam = make_family(sp, std::move(axes));
  REQUIRE(fam.size() == 3);
  PCGraph g = build_complex(fam, 50);
  REQUIRE(g.edges == 3);
  REQUIRE(g.connected);
}

TEST_CASE("graph utilities report adjacency and cut distances") {
  PCGraph p = PCGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(p.connected);
  REQUIRE(p.adjacent(1, 2));
  REQUIRE_FALSE(p.adjacent(0, 3));
  auto base = p.distances_from(0);
  REQUIRE(base[3] == 3);
  auto cut = p.distances_from(0, 1);
  REQUIRE(cut[3] == -1);

  PCGraph split = PCGraph::from_edges(4, {{0, 1}, {2, 3}});
  REQUIRE_FALSE(split.connected);
}

TEST_CASE("interior interval members force every graph geodesic") {
  const AxisFamily& chain = chain_family();
  REQUIRE(smallest_forcing_K(chain, 0, 20) == 0);
  PCGraph g = build_complex(chain, 4);
  ForcingReport rep = forcing_check(chain, g);
  REQUIRE(rep.ok);
  REQUIRE(rep.checked == 1);
  REQUIRE(g.distances_from(2, 0)[1] == -1);

  const AxisFamily& fam = translate_family_r2();
  ForcingReport bad = forcing_check(fam, build_complex(fam, 4));
  REQUIRE_FALSE(bad.ok);
  REQUIRE(bad.x == 0);
  REQUIRE(bad.z == 12);
  REQUIRE(bad.y == 17);
  REQUIRE(smallest_forcing_K(fam, 4, 20) == 9);

  PCGraph complete = build_complex(fam, 9);
  REQUIRE(complete.edges == 39 * 38 / 2);
  ForcingReport vac = forcing_check(fam, complete);
  REQUIRE(vac.ok);
  REQUIRE(vac.checked == 0);

  REQUIRE_THROWS_AS(forcing_check(fam, build_complex(fam, 9), 10), CapabilityError);
}

TEST_CASE("intervals between any two axes pass through third axis intervals") {
  const AxisFamily& fam = translate_family_r3();
  TripodReport rep = tripod_check(fam, 6);
  REQUIRE(rep.ok);
  REQUIRE(rep.triples == 780390);
  REQUIRE(rep.max_exceptions == 1);

  TripodReport cr = tripod_check(chain_family(), 4);
  REQUIRE(cr.ok);
  REQUIRE(cr.triples == 3);
  REQUIRE(cr.max_exceptions == 0);

  REQUIRE_THROWS_AS(tripod_check(fam, 6, -1, 50), CapabilityError);
}

TEST_CASE("four point condition on small graphs") {
  PCGraph path5 = PCGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  HyperbolicityReport tree = hyperbolicity_scan(path5);
  REQUIRE(tree.delta == 0.0);
  REQUIRE(tree.quadruples == 5);

  PCGraph star = PCGraph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  REQUIRE(hyperbolicity_scan(star).delta == 0.0);

  PCGraph cycle5 = PCGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  REQUIRE(hyperbolicity_scan(cycle5).delta == 0.5);

  PCGraph cycle8 = PCGraph::from_edges(
      8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}});
  HyperbolicityReport h8 = hyperbolicity_scan(cycle8);
  REQUIRE(h8.delta == 2.0);
  REQUIRE(h8.witness == std::array<int, 4>{0, 2, 4, 6});

  REQUIRE_THROWS_AS(hyperbolicity_scan(PCGraph::from_edges(4, {{0, 1}, {2, 3}})),
                    SpaceError);
  REQUIRE_THROWS_AS(hyperbolicity_scan(path5, 3), CapabilityError);
}

TEST_CASE("four point constants of translate family complexes") {
  const AxisFamily& fam = translate_family_r2();
  HyperbolicityReport h6 = hyperbolicity_scan(build_complex(fam, 6));
  REQUIRE(h6.delta == 1.0);
  REQUIRE(h6.quadruples == 82251);
  REQUIRE(hyperbolicity_scan(build_complex(fam, 8)).delta == 0.5);

  HyperbolicityReport h36 = hyperbolicity_scan(build_complex(translate_family_r3(), 6));
  REQUIRE(h36.delta == 1.0);
  REQUIRE(h36.witness == std::array<int, 4>{1, 2, 17, 78});
}

TEST_CASE("lifting within a single axis walks its window") {
  const Space& sp = F2();
  const AxisFamily& chain = chain_family();
  const Axis& A = chain.axes[2];
  Word u = A.pts[A.center() - 5];
  Word v = A.pts[A.center() + 5];

  LiftResult lift = lift_path(sp, chain, 4, 2, 2, u, v);
  REQUIRE(lift.chain == std::vector<int>{2});
  REQUIRE(lift.path.segments.size() == 1);
  REQUIRE(lift.path.segments[0].is_p);
  REQUIRE(lift.path.segments[0].path.front() == u);
  REQUIRE(lift.path.segments[0].path.back() == v);
  REQUIRE(lift.path.L == 9);
  REQUIRE(lift.path.B == 0);
  REQUIRE(first_fellow_travel_radius(sp, lift.path, 4) == 0);

  LiftResult back = lift_path(sp, chain, 4, 2, 2, v, u);
  REQUIRE(back.path.segments.size() == 1);
  REQUIRE(back.path.segments[0].path.len() == 10);
  REQUIRE(back.path.L == 9);
}

TEST_CASE("lifting across the chain visits the separating axis") {
  const Space& sp = F2();
  const AxisFamily& chain = chain_family();
  const Axis& A2 = chain.axes[2];
  const Axis& A0 = chain.axes[0];
  const Axis& A1 = chain.axes[1];

  LiftResult near = lift_path(sp, chain, 4, 2, 0, A2.pts[A2.center() - 4],
                              A0.pts[A0.center() + 4]);
  REQUIRE(near.chain == std::vector<int>{2, 0});
  REQUIRE(near.path.segments.size() == 3);
  REQUIRE(near.path.L == 2);
  REQUIRE(near.path.B == 0);
  REQUIRE(first_fellow_travel_radius(sp, near.path, 4) == 0);

  LiftResult far = lift_path(sp, chain, 4, 2, 1, A2.pts[A2.center() - 4],
                             A1.pts[A1.center() + 4]);
  REQUIRE(far.chain == std::vector<int>{2, 0, 1});
  REQUIRE(far.path.segments.size() == 5);
  std::vector<Int> lens;
  for (const auto& seg : far.path.segments) lens.push_back(seg.path.len());
  REQUIRE(lens == std::vector<Int>{10, 2, 7, 2, 3});
  REQUIRE(far.path.L == 6);
  REQUIRE(far.path.B == 0);
  REQUIRE(first_fellow_travel_radius(sp, far.path, 4) == 0);

  REQUIRE_THROWS_AS(
      lift_path(sp, chain, 4, 2, 1, parse_word(sp, "b^7"), A1.pts[A1.center()]),
      SpaceError);
  REQUIRE_THROWS_AS(lift_path(sp, chain, 4, -1, 1, A2.pts[A2.center()],
                              A1.pts[A1.center()]),
                    SpaceError);
}

TEST_CASE("every non adjacent pair of the translate family lifts to a fellow traveling path") {
  const Space& sp = F2();
  const AxisFamily& fam = translate_family_r3();
  PCGraph g = build_complex(fam, 6);
  int lifted = 0;
  size_t max_chain = 0;
  Int max_L = 0, max_B = 0;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      if (g.adjacent(u, v)) continue;
      const Axis& U = fam.axes[static_cast<size_t>(u)];
      const Axis& V = fam.axes[static_cast<size_t>(v)];
      LiftResult lift = lift_path(sp, fam, 6, u, v, U.pts[U.center()], V.pts[V.center()]);
      REQUIRE(fellow_travel_check(sp, lift.path, 0).pass);
      ++lifted;
      max_chain = std::max(max_chain, lift.chain.size());
      max_L = std::max(max_L, lift.path.L);
      max_B = std::max(max_B, lift.path.B);
    }
  REQUIRE(lifted == 129);
  REQUIRE(max_chain == 3);
  REQUIRE(max_L == 5);
  REQUIRE(max_B == 2);
}

TEST_CASE("sphere layers of the chain complex are disjoint windows") {
  const Space& sp = F2();
  const AxisFamily& chain = chain_family();
  PCGraph g = build_complex(chain, 4);
  auto spheres = visual_spheres(sp, chain, g, 2, 10);
  REQUIRE(spheres.size() == 3);
  for (size_t i = 0; i < spheres.size(); ++i) {
    REQUIRE(spheres[i].n == static_cast<Int>(i));
    REQUIRE(spheres[i].vertices.size() == 1);
    REQUIRE(spheres[i].points.size() == 61);
  }
  REQUIRE(spheres[0].vertices[0] == 2);
  REQUIRE(spheres[1].vertices[0] == 0);
  REQUIRE(spheres[2].vertices[0] == 1);

  SphereCover cov = cover_multiplicity(sp, spheres);
  REQUIRE(cov.min_multiplicity == 1);
  REQUIRE(cov.max_multiplicity == 1);
  REQUIRE(cov.points == 183);

  REQUIRE_THROWS_AS(visual_spheres(sp, chain, g, -1, 4), SpaceError);
}

TEST_CASE("sphere nets separate and cover, slabs clip by length") {
  const Space& sp = F2();
  const AxisFamily& chain = chain_family();
  PCGraph g = build_complex(chain, 4);
  auto spheres = visual_spheres(sp, chain, g, 2, 10);
  const VisualSphere& middle = spheres[1];

  auto net = sphere_net(middle, 6);
  REQUIRE(net.size() == 9);
  for (size_t i = 0; i < net.size(); ++i)
    for (size_t j = i + 1; j < net.size(); ++j) REQUIRE(distance(net[i], net[j]) > 6);
  for (const Word& p : middle.points) {
    Int best = -1;
    for (const Word& q : net) {
      Int d = distance(q, p);
      if (best < 0 || d < best) best = d;
    }
    REQUIRE(best <= 6);
  }

  auto slab = sphere_slab(middle, 12, 2);
  REQUIRE(slab.size() == 10);
  Int lo = 1000, hi = -1;
  for (const Word& p : slab) {
    lo = std::min(lo, length(p));
    hi = std::max(hi, length(p));
  }
  REQUIRE(lo == 10);
  REQUIRE(hi == 14);
}

TEST_CASE("weighted sphere series stays within submultiplicative bounds") {
  const Space& sp = F2();
  const AxisFamily& fam = translate_family_r3();
  PCGraph g = build_complex(fam, 4);
  int base = fam.index_of("e|a b");
  REQUIRE(base == 114);

  auto spheres = visual_spheres(sp, fam, g, base, 10);
  REQUIRE(spheres.size() == 3);
  REQUIRE(spheres[0].vertices.size() == 1);
  REQUIRE(spheres[0].points.size() == 53);
  REQUIRE(spheres[1].vertices.size() == 93);
  REQUIRE(spheres[1].points.size() == 4459);
  REQUIRE(spheres[2].vertices.size() == 23);
  REQUIRE(spheres[2].points.size() == 1158);

  SphereCover cov = cover_multiplicity(sp, spheres);
  REQUIRE(cov.min_multiplicity == 1);
  REQUIRE(cov.max_multiplicity == 3);
  REQUIRE(cov.points == 5595);

  TnSeries ser = tn_series(spheres, std::log(3.0));
  REQUIRE(ser.sums.size() == 3);
  REQUIRE(ser.sums[0] == Approx(2.0 - std::pow(3.0, -26.0)).epsilon(1e-12));
  REQUIRE(ser.sums[1] == Approx(7.124828532).margin(1e-6));
  REQUIRE(ser.sums[2] == Approx(4.731138546).margin(1e-6));
  REQUIRE(ser.ratios.size() == 2);
  REQUIRE(ser.ratios[0] == Approx(3.562414266).margin(1e-6));
  REQUIRE(ser.ratios[1] == Approx(0.664035425).margin(1e-6));
  double rmax = std::max(ser.ratios[0], ser.ratios[1]);
  double rmin = std::min(ser.ratios[0], ser.ratios[1]);
  REQUIRE(rmax / rmin <= 10.0);
  REQUIRE(ser.max_defect == Approx(0.093200197).margin(1e-6));
  REQUIRE(ser.max_defect <= 10.0);
  REQUIRE(ser.defect_n == 1);
  REQUIRE(ser.defect_m == 1);

  TnSeries trivial = tn_series({spheres[0]}, std::log(3.0));
  REQUIRE(trivial.ratios.empty());
  REQUIRE(trivial.max_defect == 0.0);
}

TEST_CASE("families in a mixed factor space project to points") {
  Space zz = Space::free_product({2, 1}, {"a", "b", "t"});
  AxisFamily fam = make_family(zz, {parse_word(zz, "t")}, 2);
  REQUIRE(fam.size() == 21);
  REQUIRE(fam.W == 16);
  REQUIRE(fam.index_of("a b^-1|t") >= 0);

  REQUIRE(smallest_axiom_kappa(fam) == 0);
  AxiomReport rep = check_axioms(fam, 0);
  REQUIRE(rep.pass);
  REQUIRE(rep.max_projection == 0);
  REQUIRE(rep.max_separator_count == 1);

  PCGraph g = build_complex(fam, 2);
  REQUIRE(g.edges == 21 * 20 / 2);
  REQUIRE(g.connected);
}

TEST_CASE("flat directions refuse family projection tables") {
  Space z2 = Space::lattice(2);
  REQUIRE_THROWS_WITH(make_family(z2, {parse_word(z2, "a")}, 2),
                      ContainsSubstring("inconclusive"));
}
