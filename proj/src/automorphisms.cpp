// Automorphism groups of circulants by individualization and refinement.
//
// The base path individualizes the first vertex of the first non-singleton
// cell until the partition is discrete. Levels are then processed bottom-up:
// for each vertex in the target cell of b_i that is not yet in the orbit of
// the generators fixing b_0..b_{i-1}, a depth-first search looks for an
// automorphism fixing the prefix and sending b_i there.

#include <array>
#include <bit>
#include <cstdlib>
#include <string>

#include "holocirc/circulant.hpp"
#include "holocirc/simd/kernels.hpp"

namespace holocirc {

namespace {

std::size_t& bound_override() {
  static std::size_t b = 0;
  return b;
}

using Cells = std::vector<std::uint64_t>;
using Trace = std::vector<std::uint32_t>;

struct Node {
  Cells cells;
  Trace trace;
};

void refine(const std::vector<std::uint64_t>& rows, Node& nd) {
  Cells& P = nd.cells;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t w = 0; w < P.size() && !changed; ++w) {
      const std::uint64_t W = P[w];
      for (std::size_t c = 0; c < P.size(); ++c) {
        const std::uint64_t C = P[c];
        if (std::popcount(C) == 1) continue;
        std::array<std::uint64_t, 65> groups{};
        for (std::uint64_t rest = C; rest; rest &= rest - 1) {
          unsigned v = std::countr_zero(rest);
          groups[std::popcount(rows[v] & W)] |= std::uint64_t{1} << v;
        }
        std::size_t nonempty = 0;
        for (auto g : groups) nonempty += g != 0;
        if (nonempty == 1) continue;
        Cells repl;
        nd.trace.push_back(static_cast<std::uint32_t>(w));
        nd.trace.push_back(static_cast<std::uint32_t>(c));
        for (std::uint32_t k = 0; k < groups.size(); ++k)
          if (groups[k]) {
            repl.push_back(groups[k]);
            nd.trace.push_back(k);
            nd.trace.push_back(static_cast<std::uint32_t>(std::popcount(groups[k])));
          }
        P.erase(P.begin() + static_cast<std::ptrdiff_t>(c));
        P.insert(P.begin() + static_cast<std::ptrdiff_t>(c), repl.begin(), repl.end());
        changed = true;
        break;
      }
    }
  }
  nd.trace.push_back(0xFFFFFFFFu);
}

Node individualize(const std::vector<std::uint64_t>& rows, const Node& nd, std::size_t cell,
                   unsigned v) {
  Node out;
  out.cells = nd.cells;
  const std::uint64_t bit = std::uint64_t{1} << v;
  out.cells[cell] &= ~bit;
  out.cells.insert(out.cells.begin() + static_cast<std::ptrdiff_t>(cell), bit);
  out.trace.push_back(static_cast<std::uint32_t>(cell));
  refine(rows, out);
  return out;
}

std::size_t first_nonsingleton(const Cells& P) {
  for (std::size_t i = 0; i < P.size(); ++i)
    if (std::popcount(P[i]) > 1) return i;
  return P.size();
}

class Search {
 public:
  Search(const Circulant& g) : g_(g), rows_(g.rows()), n_(g.order()) {
    Node nd;
    nd.cells = {n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1};
    refine(rows_, nd);
    path_.push_back(nd);
    for (;;) {
      std::size_t c = first_nonsingleton(path_.back().cells);
      if (c == path_.back().cells.size()) break;
      unsigned v = std::countr_zero(path_.back().cells[c]);
      target_.push_back(c);
      base_.push_back(v);
      path_.push_back(individualize(rows_, path_.back(), c, v));
    }
  }

  AutResult run() {
    AutResult res;
    std::vector<std::uint32_t> shift(n_);
    for (u64 i = 0; i < n_; ++i) shift[i] = static_cast<std::uint32_t>((i + 1) % n_);
    Perm rho = Perm::trusted(shift);
    std::vector<std::pair<std::size_t, Perm>> found;  // (level, generator)
    const std::size_t k = base_.size();
    std::vector<std::size_t> lengths(k, 1);
    for (std::size_t i = k; i-- > 1;) {
      auto orbit = orbit_of(base_[i], found, i);
      const std::uint64_t cell = path_[i].cells[target_[i]];
      for (std::uint64_t rest = cell; rest; rest &= rest - 1) {
        unsigned c = std::countr_zero(rest);
        if ((orbit >> c) & 1) continue;
        if (auto sigma = test(i, c)) {
          found.emplace_back(i, std::move(*sigma));
          orbit = orbit_of(base_[i], found, i);
        }
      }
      lengths[i] = static_cast<std::size_t>(std::popcount(orbit));
    }
    if (k > 0) lengths[0] = n_;
    res.generators.push_back(rho);
    for (auto& [lv, p] : found) res.generators.push_back(std::move(p));
    res.order = 1;
    for (auto l : lengths) res.order *= l;
    res.base.assign(base_.begin(), base_.end());
    res.orbit_lengths = lengths;
    return res;
  }

 private:
  std::uint64_t orbit_of(unsigned b, const std::vector<std::pair<std::size_t, Perm>>& found,
                         std::size_t level) const {
    std::uint64_t orb = std::uint64_t{1} << b;
    std::vector<unsigned> queue{b};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (const auto& [lv, p] : found) {
        if (lv < level) continue;
        unsigned v = p[queue[q]];
        if (!((orb >> v) & 1)) {
          orb |= std::uint64_t{1} << v;
          queue.push_back(v);
        }
      }
    return orb;
  }

  std::optional<Perm> test(std::size_t i, unsigned c) const {
    Node nd = individualize(rows_, path_[i], target_[i], c);
    if (nd.trace != path_[i + 1].trace || nd.cells.size() != path_[i + 1].cells.size())
      return std::nullopt;
    return dfs(i + 1, nd);
  }

  std::optional<Perm> dfs(std::size_t depth, const Node& nd) const {
    if (depth == base_.size()) {
      std::vector<std::uint32_t> img(n_);
      const Cells& leaf = path_.back().cells;
      for (std::size_t j = 0; j < leaf.size(); ++j)
        img[std::countr_zero(leaf[j])] = static_cast<std::uint32_t>(std::countr_zero(nd.cells[j]));
      if (!simd::preserves_edges(rows_.data(), img.data(), n_)) return std::nullopt;
      return Perm::trusted(std::move(img));
    }
    const std::size_t cell = target_[depth];
    for (std::uint64_t rest = nd.cells[cell]; rest; rest &= rest - 1) {
      unsigned v = std::countr_zero(rest);
      Node next = individualize(rows_, nd, cell, v);
      if (next.trace != path_[depth + 1].trace) continue;
      if (auto r = dfs(depth + 1, next)) return r;
    }
    return std::nullopt;
  }

  const Circulant& g_;
  const std::vector<std::uint64_t>& rows_;
  u64 n_;
  std::vector<Node> path_;
  std::vector<std::size_t> target_;
  std::vector<unsigned> base_;
};

}  // namespace

std::size_t graph_bound() {
  if (bound_override()) return bound_override();
  if (const char* env = std::getenv("HOLOCIRC_MAX_DEGREE")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return std::min<std::size_t>(v, kMaxCirculantOrder);
  }
  return 32;
}

void set_graph_bound(std::size_t bound) {
  bound_override() = std::min(bound, kMaxCirculantOrder);
}

AutResult automorphism_group(const Circulant& g) {
  if (g.order() > graph_bound())
    throw ResourceBoundError("circulant order " + std::to_string(g.order()) +
                             " exceeds the graph bound " + std::to_string(graph_bound()));
  AutResult res = Search(g).run();
  const auto mults = aut_G_S(g);
  bool affine = true;
  for (const auto& p : res.generators)
    if (!as_affine(p)) affine = false;
  res.within_holomorph = affine && res.order == BigInt(g.order()) * mults.size();
  return res;
}

}  // namespace holocirc
