#include <algorithm>

#include "holocirc/permgroup.hpp"

namespace holocirc {

namespace {

std::optional<std::uint32_t> first_moved(const Perm& p) {
  for (std::uint32_t i = 0; i < p.degree(); ++i)
    if (p[i] != i) return i;
  return std::nullopt;
}

bool fixes_prefix(const Perm& p, const std::vector<std::uint32_t>& base, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (p[base[i]] != base[i]) return false;
  return true;
}

}  // namespace

StabChain::StabChain(std::size_t degree, const std::vector<Perm>& generators)
    : degree_(degree) {
  build(generators);
}

void StabChain::rebuild_orbit(Level& lv) const {
  lv.transversal.assign(degree_, std::nullopt);
  lv.transversal[lv.point] = Perm::identity(degree_);
  std::vector<std::uint32_t> queue{lv.point};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Perm& u = *lv.transversal[queue[i]];
    for (const auto& s : lv.gens) {
      auto v = s[queue[i]];
      if (!lv.transversal[v]) {
        lv.transversal[v] = u.then(s);
        queue.push_back(v);
      }
    }
  }
}

std::pair<Perm, std::size_t> StabChain::sift(const Perm& p, std::size_t from) const {
  Perm g = p;
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& lv = levels_[i];
    auto b = g[lv.point];
    if (!lv.transversal[b]) return {g, i};
    g = g.then(lv.transversal[b]->inverse());
  }
  return {g, levels_.size()};
}

void StabChain::build(const std::vector<Perm>& generators) {
  std::vector<Perm> gens;
  for (const auto& g : generators)
    if (!g.is_identity()) gens.push_back(g);
  if (gens.empty()) return;

  // Initial base: every generator must move some base point.
  for (const auto& g : gens) {
    if (!fixes_prefix(g, base_, base_.size())) continue;
    base_.push_back(*first_moved(g));
  }
  for (std::size_t i = 0; i < base_.size(); ++i) {
    Level lv;
    lv.point = base_[i];
    for (const auto& g : gens)
      if (fixes_prefix(g, base_, i)) lv.gens.push_back(g);
    levels_.push_back(std::move(lv));
    rebuild_orbit(levels_.back());
  }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool restart = false;
    Level& lv = levels_[i];
    for (std::uint32_t beta = 0; !restart && beta < degree_; ++beta) {
      if (!lv.transversal[beta]) continue;
      for (std::size_t si = 0; !restart && si < lv.gens.size(); ++si) {
        const Perm& s = lv.gens[si];
        Perm h = lv.transversal[beta]->then(s).then(lv.transversal[s[beta]]->inverse());
        auto [res, j] = sift(h, static_cast<std::size_t>(i) + 1);
        if (res.is_identity()) continue;
        if (j == levels_.size()) {
          Level nl;
          nl.point = *first_moved(res);
          base_.push_back(nl.point);
          levels_.push_back(std::move(nl));
        }
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gens.push_back(res);
          rebuild_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restart = true;
      }
    }
    if (!restart) --i;
  }
}

std::vector<std::size_t> StabChain::orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_)
    out.push_back(static_cast<std::size_t>(
        std::count_if(lv.transversal.begin(), lv.transversal.end(),
                      [](const auto& t) { return t.has_value(); })));
  return out;
}

BigInt StabChain::order() const {
  BigInt r = 1;
  for (auto l : orbit_lengths()) r *= l;
  return r;
}

bool StabChain::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  auto [res, j] = sift(p);
  return j == levels_.size() && res.is_identity();
}

}  // namespace holocirc
