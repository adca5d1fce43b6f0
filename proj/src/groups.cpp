#include "orbi/groups.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "orbi/error.hpp"
#include "orbi/serialize.hpp"

namespace orbi {

GroupPtr FiniteMatrixGroup::generate(std::size_t dim, const std::vector<Matrix>& generators,
                                     std::size_t order_bound) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& g = generators[i];
    const std::string path = "/generators/" + std::to_string(i);
    if (g.rows() != dim || g.cols() != dim)
      throw InputError(path, "generator must be " + std::to_string(dim) + "x" + std::to_string(dim));
    if (!g.inverse()) throw InputError(path, "generator is not invertible");
  }

  auto grp = std::shared_ptr<FiniteMatrixGroup>(new FiniteMatrixGroup());
  grp->dim_ = dim;
  grp->gens_ = generators;
  grp->elems_.push_back(Matrix::identity(dim));
  grp->lookup_.emplace(grp->elems_[0], 0);
  grp->words_.emplace_back(0, 0);

  for (std::size_t k = 0; k < grp->elems_.size(); ++k) {
    for (std::size_t s = 0; s < generators.size(); ++s) {
      Matrix cand = generators[s] * grp->elems_[k];
      if (grp->lookup_.count(cand)) continue;
      if (grp->elems_.size() >= order_bound)
        throw CheckFailure("order_bound",
                           "group closure exceeds order bound " + std::to_string(order_bound) +
                               " (infinite or too large)",
                           {{"order_bound", order_bound}});
      grp->lookup_.emplace(cand, grp->elems_.size());
      grp->elems_.push_back(std::move(cand));
      grp->words_.emplace_back(s, k);
    }
  }

  const std::size_t n = grp->elems_.size();
  grp->table_.resize(n * n);
  grp->inverse_.assign(n, 0);
  // Products via the spanning words: g_k * x = gen_s * (e * x).
  for (std::size_t x = 0; x < n; ++x) grp->table_[x] = x;
  std::vector<std::vector<std::size_t>> left(generators.size(), std::vector<std::size_t>(n));
  for (std::size_t s = 0; s < generators.size(); ++s)
    for (std::size_t x = 0; x < n; ++x) left[s][x] = grp->lookup_.at(generators[s] * grp->elems_[x]);
  for (std::size_t k = 1; k < n; ++k) {
    auto [s, e] = grp->words_[k];
    for (std::size_t x = 0; x < n; ++x) grp->table_[k * n + x] = left[s][grp->table_[e * n + x]];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (grp->table_[a * n + b] == 0) {
        grp->inverse_[a] = b;
        break;
      }
  for (const auto& g : generators) grp->gen_idx_.push_back(grp->lookup_.at(g));
  return grp;
}

std::optional<std::size_t> FiniteMatrixGroup::index_of(const Matrix& m) const {
  auto it = lookup_.find(m);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool FiniteMatrixGroup::is_abelian() const {
  for (auto a : gen_idx_)
    for (auto b : gen_idx_)
      if (product(a, b) != product(b, a)) return false;
  return true;
}

std::size_t FiniteMatrixGroup::element_order(std::size_t i) const {
  std::size_t k = 1;
  for (std::size_t x = i; x != 0; x = product(x, i)) ++k;
  return k;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<std::size_t> members) : parent_(std::move(parent)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
  if (members_.empty() || members_.front() != 0) throw std::invalid_argument("subgroup must contain the identity");
  for (auto a : members_) {
    if (a >= parent_->order()) throw std::out_of_range("subgroup member index out of range");
    for (auto b : members_)
      if (!contains(parent_->product(a, b))) throw std::invalid_argument("subgroup members not closed under product");
  }
}

Subgroup Subgroup::whole(const GroupPtr& g) {
  std::vector<std::size_t> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Subgroup(g, std::move(all));
}

Subgroup Subgroup::generated_by(const GroupPtr& g, const std::vector<std::size_t>& elems) {
  std::vector<char> in(g->order(), 0);
  std::vector<std::size_t> out{0};
  in[0] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (auto s : elems) {
      std::size_t c = g->product(s, out[k]);
      if (!in[c]) {
        in[c] = 1;
        out.push_back(c);
      }
    }
  return Subgroup(g, std::move(out));
}

bool Subgroup::contains(std::size_t parent_index) const {
  return std::binary_search(members_.begin(), members_.end(), parent_index);
}

bool Subgroup::is_normal() const {
  for (std::size_t g = 0; g < parent_->order(); ++g)
    for (auto h : members_)
      if (!contains(parent_->product(parent_->product(g, h), parent_->inverse(g)))) return false;
  return true;
}

std::vector<Matrix> Subgroup::matrices() const {
  std::vector<Matrix> out;
  for (auto i : members_) out.push_back(parent_->element(i));
  return out;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (parent_ != other.parent_) throw std::invalid_argument("intersection of subgroups of different groups");
  std::vector<std::size_t> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
  return Subgroup(parent_, std::move(out));
}

Subgroup Subgroup::conjugate(std::size_t g) const {
  std::vector<std::size_t> out;
  for (auto h : members_) out.push_back(parent_->product(parent_->product(g, h), parent_->inverse(g)));
  return Subgroup(parent_, std::move(out));
}

std::vector<std::size_t> Subgroup::small_generating_set() const {
  std::vector<std::size_t> gens;
  Subgroup cur = trivial(parent_);
  // Largest element order first tends to give short generating sets.
  std::vector<std::size_t> order_sorted(members_.begin(), members_.end());
  std::stable_sort(order_sorted.begin(), order_sorted.end(), [&](std::size_t a, std::size_t b) {
    return parent_->element_order(a) > parent_->element_order(b);
  });
  for (auto m : order_sorted) {
    if (cur.order() == order()) break;
    if (cur.contains(m)) continue;
    gens.push_back(m);
    cur = generated_by(parent_, gens);
  }
  return gens;
}

GroupPtr Subgroup::as_group() const {
  std::vector<Matrix> gens;
  for (auto i : small_generating_set()) gens.push_back(parent_->element(i));
  return FiniteMatrixGroup::generate(parent_->dim(), gens);
}

GroupHom verify_homomorphism(const GroupPtr& source, const GroupPtr& target,
                             const std::vector<std::size_t>& generator_images) {
  if (generator_images.size() != source->generators().size())
    throw InputError("/theta_gen_images", "expected " + std::to_string(source->generators().size()) +
                                              " generator images, got " + std::to_string(generator_images.size()));
  for (auto t : generator_images)
    if (t >= target->order()) throw std::out_of_range("generator image index out of range");

  const std::size_t n = source->order();
  std::vector<std::size_t> map(n, 0);
  for (std::size_t k = 1; k < n; ++k) {
    auto [s, e] = source->spanning_words()[k];
    map[k] = target->product(generator_images[s], map[e]);
  }

  auto fail = [&](std::size_t a, std::size_t b, const std::string& what) {
    nlohmann::json w = {{"a", to_json(source->element(a))},
                        {"b", to_json(source->element(b))},
                        {"ab", to_json(source->element(source->product(a, b)))},
                        {"image_of_ab", to_json(target->element(map[source->product(a, b)]))},
                        {"image_a_times_image_b", to_json(target->element(target->product(map[a], map[b])))}};
    throw CheckFailure("not_a_homomorphism", "not a homomorphism: " + what, std::move(w));
  };
  // A generator listed twice (or a generator equal to the identity) must be
  // assigned consistently with the word extension.
  for (std::size_t s = 0; s < generator_images.size(); ++s) {
    std::size_t gi = source->generator_indices()[s];
    if (map[gi] != generator_images[s]) {
      // The word extension reached this element through a different
      // generator word; report it as a product witness gen * identity.
      nlohmann::json w = {{"generator", s},
                          {"element", to_json(source->element(gi))},
                          {"assigned_image", to_json(target->element(generator_images[s]))},
                          {"image_by_relations", to_json(target->element(map[gi]))}};
      throw CheckFailure("not_a_homomorphism", "not a homomorphism: generator image contradicts a relation",
                         std::move(w));
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (map[source->product(a, b)] != target->product(map[a], map[b])) fail(a, b, "map(ab) != map(a)map(b)");

  GroupHom h;
  h.source_ = source;
  h.target_ = target;
  h.map_ = std::move(map);
  return h;
}

GroupHom verify_homomorphism(const GroupPtr& source, const GroupPtr& target,
                             const std::vector<Matrix>& generator_images) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < generator_images.size(); ++i) {
    auto j = target->index_of(generator_images[i]);
    if (!j)
      throw InputError("/theta_gen_images/" + std::to_string(i), "image is not an element of the target group");
    idx.push_back(*j);
  }
  return verify_homomorphism(source, target, idx);
}

GroupHom trivial_homomorphism(const GroupPtr& source, const GroupPtr& target) {
  return verify_homomorphism(source, target, std::vector<std::size_t>(source->generators().size(), 0));
}

GroupHom conjugate_homomorphism(const GroupHom& hom, std::size_t eta) {
  const auto& t = hom.target();
  std::vector<std::size_t> imgs;
  for (auto g : hom.source()->generator_indices())
    imgs.push_back(t->product(t->product(eta, hom(g)), t->inverse(eta)));
  return verify_homomorphism(hom.source(), t, imgs);
}

bool GroupHom::is_injective() const {
  return std::count(map_.begin(), map_.end(), std::size_t{0}) == 1;
}

std::vector<Matrix> GroupHom::generator_images() const {
  std::vector<Matrix> out;
  for (auto g : source_->generator_indices()) out.push_back(target_->element(map_[g]));
  return out;
}

Subgroup kernel_of(const GroupHom& hom) {
  std::vector<std::size_t> k;
  for (std::size_t i = 0; i < hom.map().size(); ++i)
    if (hom.map()[i] == 0) k.push_back(i);
  Subgroup s(hom.source(), std::move(k));
  if (!s.is_normal()) throw std::logic_error("kernel is not normal");
  return s;
}

Subgroup image_of(const GroupHom& hom) {
  return Subgroup(hom.target(), hom.map());
}

QuotientGroup quotient(const Subgroup& normal) {
  const auto& g = normal.parent();
  for (std::size_t x = 0; x < g->order(); ++x)
    for (auto h : normal.members()) {
      std::size_t c = g->product(g->product(x, h), g->inverse(x));
      if (!normal.contains(c))
        throw CheckFailure("not_normal", "subgroup is not normal",
                           {{"g", to_json(g->element(x))},
                            {"h", to_json(g->element(h))},
                            {"g_h_ginv", to_json(g->element(c))}});
    }

  QuotientGroup q;
  q.normal_ = normal;
  const std::size_t sentinel = g->order();
  q.coset_of_.assign(g->order(), sentinel);
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (q.coset_of_[x] != sentinel) continue;
    std::vector<std::size_t> coset;
    for (auto h : normal.members()) coset.push_back(g->product(x, h));
    std::sort(coset.begin(), coset.end());
    for (auto y : coset) q.coset_of_[y] = q.cosets_.size();
    q.cosets_.push_back(std::move(coset));
  }
  const std::size_t m = q.cosets_.size();
  q.table_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      q.table_[a * m + b] = q.coset_of_[g->product(q.cosets_[a].front(), q.cosets_[b].front())];
  return q;
}

Subspace fixed_subspace(const Subgroup& h) {
  const std::size_t n = h.parent()->dim();
  Subspace fix = Subspace::full(n);
  for (auto i : h.members()) {
    if (i == 0) continue;
    fix = fix.intersect(Subspace::null_space(h.parent()->element(i) - Matrix::identity(n)));
  }
  return fix;
}

Subspace fixed_subspace(const FiniteMatrixGroup& g) {
  const std::size_t n = g.dim();
  Subspace fix = Subspace::full(n);
  for (const auto& m : g.generators()) fix = fix.intersect(Subspace::null_space(m - Matrix::identity(n)));
  return fix;
}

Subgroup pointwise_stabilizer(const Subgroup& h, const Subspace& s) {
  std::vector<std::size_t> out;
  for (auto i : h.members())
    if (s.pointwise_fixed_by(h.parent()->element(i))) out.push_back(i);
  return Subgroup(h.parent(), std::move(out));
}

Subgroup stabilizer(const GroupPtr& g, const Vector& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g->order(); ++i)
    if (g->element(i) * v == v) out.push_back(i);
  return Subgroup(g, std::move(out));
}

std::vector<Subgroup> index2_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  if (g->order() % 2 != 0) return out;
  // Z/2 realized as {[1], [-1]} so that verify_homomorphism can check each assignment.
  static const GroupPtr z2 = FiniteMatrixGroup::generate(1, {Matrix{{-1}}});
  const std::size_t k = g->generators().size();
  if (k > 20) throw std::invalid_argument("too many generators for index-2 enumeration");
  std::set<std::vector<std::size_t>> seen;
  for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
    std::vector<std::size_t> imgs(k);
    for (std::size_t s = 0; s < k; ++s) imgs[s] = (mask >> s) & 1UL;
    GroupHom h;
    try {
      h = verify_homomorphism(g, z2, imgs);
    } catch (const CheckFailure&) {
      continue;
    }
    Subgroup ker = kernel_of(h);
    if (ker.order() * 2 != g->order()) continue;
    if (seen.insert(ker.members()).second) out.push_back(std::move(ker));
  }
  return out;
}

}  // namespace orbi
