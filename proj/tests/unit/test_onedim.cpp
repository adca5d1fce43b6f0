#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "orbi/corpus.hpp"
#include "orbi/error.hpp"
#include "orbi/onedim.hpp"

using namespace orbi;
using testing::vec;

namespace {

OneOrbifoldComponent loop() { return {true, {}}; }
OneOrbifoldComponent interval(EndKind a, EndKind b) { return {false, {a, b}}; }

Atlas corpus_atlas(const std::string& name) {
  const CorpusEntry* e = find_entry(name);
  REQUIRE(e != nullptr);
  return parse_atlas(e->scenario);
}

std::vector<std::string> atlas_entries() {
  std::vector<std::string> out;
  for (const auto& e : builtin_corpus())
    if (scenario_kind(e.scenario) == "atlas") out.push_back(e.name);
  return out;
}

std::vector<char> sorted_types(const AssemblyReport& r) {
  std::vector<char> t;
  for (const auto& c : r.closed_components()) t.push_back(classify_1_orbifold(c));
  std::sort(t.begin(), t.end());
  return t;
}

// Reverses the chart list and the piece list, remapping every reference.
Atlas relabeled(const Atlas& a) {
  Atlas b = a;
  const std::size_t nc = a.charts.size(), np = a.pieces.size();
  std::reverse(b.charts.begin(), b.charts.end());
  std::reverse(b.pieces.begin(), b.pieces.end());
  for (auto& p : b.pieces) p.chart = nc - 1 - p.chart;
  for (auto& l : b.links) {
    l.from = np - 1 - l.from;
    l.to = np - 1 - l.to;
  }
  std::reverse(b.links.begin(), b.links.end());
  return b;
}

}  // namespace

TEST_CASE("classify_1_orbifold examples") {
  CHECK(classify_1_orbifold(loop()) == 'a');
  CHECK(classify_1_orbifold(interval(EndKind::boundary, EndKind::boundary)) == 'b');
  CHECK(classify_1_orbifold(interval(EndKind::boundary, EndKind::mirror)) == 'c');
  CHECK(classify_1_orbifold(interval(EndKind::mirror, EndKind::boundary)) == 'c');
  CHECK(classify_1_orbifold(interval(EndKind::mirror, EndKind::mirror)) == 'd');
  CHECK_THROWS_AS(classify_1_orbifold({true, {EndKind::mirror}}), InputError);
  CHECK_THROWS_AS(classify_1_orbifold({false, {EndKind::mirror}}), InputError);
}

TEST_CASE("boundary_parity examples") {
  auto r = boundary_parity({loop(), interval(EndKind::boundary, EndKind::boundary),
                            interval(EndKind::boundary, EndKind::boundary)});
  CHECK(r.boundary_points == 4);
  CHECK(r.even);
  auto z = boundary_parity({loop()});
  CHECK(z.boundary_points == 0);
  CHECK(z.even);
  try {
    boundary_parity({interval(EndKind::boundary, EndKind::mirror)});
    FAIL("expected CheckFailure");
  } catch (const CheckFailure& e) {
    CHECK(e.code() == "mirror_component");
  }
}

TEST_CASE("forbidden_index2_check examples") {
  auto refl = forbidden_index2_check(build_chart(2, {Matrix::diag(vec({1, -1}))}, false));
  CHECK(refl.forbidden);
  REQUIRE(refl.witness.has_value());
  CHECK(refl.witness->is_trivial());
  REQUIRE(refl.fixed.has_value());
  CHECK(refl.fixed->dim() == 2);
  CHECK_FALSE(forbidden_index2_check(build_chart(2, {Matrix{{0, -1}, {1, -1}}}, false)).forbidden);
  CHECK_FALSE(forbidden_index2_check(build_chart(2, {}, false)).forbidden);
  // Z4 rotation: the index-2 subgroup {+-I} fixes nothing.
  auto z4 = forbidden_index2_check(build_chart(2, {Matrix{{0, -1}, {1, 0}}}, false));
  CHECK(z4.index2_subgroups == 1);
  CHECK_FALSE(z4.forbidden);
}

TEST_CASE("forbidden witness has an invariant complement to its fixed line") {
  // The reduction to a fixed-vector test relies on the averaged complement.
  LocalChart c = build_chart(3, {Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, Matrix::diag(vec({1, 1, -1}))}, false);
  auto f = forbidden_index2_check(c);
  REQUIRE(f.forbidden);
  GroupPtr h = f.witness->as_group();
  Vector v = f.fixed->basis().front();
  Matrix b = invariant_form(*h);
  Subspace complement = Subspace::span(3, {b * v}).annihilator();
  CHECK(complement.dim() == 2);
  CHECK_FALSE(complement.contains(v));
  for (const auto& m : h->elements()) {
    CHECK(complement.is_invariant_under(m));
    CHECK(m * v == v);
  }
}

TEST_CASE("no_retraction_hypothesis examples") {
  HypothesisReport c = no_retraction_hypothesis(corpus_atlas("type-c-retraction"));
  CHECK_FALSE(c.holds);
  REQUIRE(c.stratum.has_value());
  CHECK(c.stratum->codim == 1);
  CHECK(no_retraction_hypothesis(corpus_atlas("disk-cone-sum")).holds);
  CHECK(no_retraction_hypothesis(corpus_atlas("manifold-disk")).holds);
}

TEST_CASE("assemble_components examples") {
  SUBCASE("two boundary ends") { CHECK(sorted_types(assemble_components(corpus_atlas("type-b-interval"))) == std::vector<char>{'b'}); }
  SUBCASE("mirror end and boundary end") {
    CHECK(sorted_types(assemble_components(corpus_atlas("type-c-interval"))) == std::vector<char>{'c'});
  }
  SUBCASE("two mirror ends") { CHECK(sorted_types(assemble_components(corpus_atlas("type-d-interval"))) == std::vector<char>{'d'}); }
  SUBCASE("closed loops") {
    CHECK(sorted_types(assemble_components(corpus_atlas("Z4-circle-loop"))) == std::vector<char>{'a'});
    CHECK(sorted_types(assemble_components(corpus_atlas("C3-circle-loop"))) == std::vector<char>{'a'});
  }
}

TEST_CASE("assembly rejects mismatched identifications") {
  Atlas a = corpus_atlas("Z4-circle-loop");
  REQUIRE(!a.links.empty());
  a.links[0].translate = vec({2, 0});
  CHECK_THROWS_AS(assemble_components(a), CheckFailure);

  Atlas b = corpus_atlas("type-b-interval");
  REQUIRE(!b.links.empty());
  b.links.push_back(b.links.front());
  CHECK_THROWS_AS(assemble_components(b), CheckFailure);
}

TEST_CASE("assembly is stable under relabeling") {
  for (const auto& name : atlas_entries()) {
    Atlas a = corpus_atlas(name);
    AssemblyReport r;
    try {
      r = assemble_components(a);
    } catch (const std::exception&) {
      continue;
    }
    AssemblyReport s = assemble_components(relabeled(a));
    CHECK(r.closed() == s.closed());
    CHECK(sorted_types(r) == sorted_types(s));
  }
}

TEST_CASE("retraction_contradiction examples") {
  SUBCASE("type (c): hypothesis not met") {
    RetractionReport r = retraction_contradiction(corpus_atlas("type-c-retraction"));
    CHECK_FALSE(r.hypothesis_holds);
    CHECK_FALSE(r.contradiction);
    CHECK(r.hypothesis.chart.has_value());
  }
  SUBCASE("disk with a cone point") {
    for (const char* name : {"disk-cone-product", "disk-cone-difference", "disk-cone-sum"}) {
      RetractionReport r = retraction_contradiction(corpus_atlas(name));
      CHECK(r.hypothesis_holds);
      CHECK(r.contradiction);
      CHECK(r.reason == "forced_mirror_absent");
      CHECK(r.boundary_ends == 1);
    }
  }
  SUBCASE("manifold disk") {
    RetractionReport r = retraction_contradiction(corpus_atlas("manifold-disk"));
    CHECK(r.hypothesis_holds);
    CHECK(r.contradiction);
    CHECK(r.reason == "odd_boundary_count");
  }
}

TEST_CASE("retraction hypothesis plus valid scenario always yields a contradiction") {
  for (const auto& name : atlas_entries()) {
    Atlas a = corpus_atlas(name);
    if (!no_retraction_hypothesis(a).holds) continue;
    RetractionReport r;
    try {
      r = retraction_contradiction(a);
    } catch (const InputError&) {
      continue;  // not a retraction scenario (no boundary charts or germs)
    } catch (const CheckFailure&) {
      continue;  // preconditions fail
    }
    CHECK(r.contradiction);
  }
}

TEST_CASE("non-forbidden atlases assemble to types a and b with even boundary") {
  std::size_t checked = 0;
  for (const auto& name : atlas_entries()) {
    Atlas a = corpus_atlas(name);
    bool forbidden = false;
    for (const auto& c : a.charts) forbidden |= forbidden_index2_check(c.chart).forbidden;
    if (forbidden) continue;
    AssemblyReport r;
    try {
      r = assemble_components(a);
    } catch (const CheckFailure&) {
      continue;
    }
    if (!r.closed()) continue;
    ++checked;
    for (char t : sorted_types(r)) CHECK((t == 'a' || t == 'b'));
    CHECK(boundary_parity(r.closed_components()).even);
  }
  CHECK(checked >= 3);
}
