#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmtrace/mod_arith.hpp"
#include "cmtrace/rat_func.hpp"

namespace cmtrace {

/// Bracket-expression tree witnessing membership in a Lie closure. Shared
/// subtrees are reused, so replay cost is linear in the number of distinct
/// nodes.
struct Cert;
using CertPtr = std::shared_ptr<const Cert>;

struct Cert {
  enum class Kind { leaf, bracket, lincomb };
  Kind kind = Kind::leaf;
  int leaf = -1;            // generator index
  CertPtr left, right;      // bracket arguments
  std::vector<std::pair<RatFunc, CertPtr>> parts;  // linear combination

  static CertPtr make_leaf(int i) {
    auto c = std::make_shared<Cert>();
    c->leaf = i;
    return c;
  }
  static CertPtr make_bracket(CertPtr l, CertPtr r) {
    auto c = std::make_shared<Cert>();
    c->kind = Kind::bracket;
    c->left = std::move(l);
    c->right = std::move(r);
    return c;
  }
  static CertPtr make_lincomb(std::vector<std::pair<RatFunc, CertPtr>> parts) {
    if (parts.size() == 1 && parts[0].first == RatFunc(NPoly(1)))
      return parts[0].second;
    auto c = std::make_shared<Cert>();
    c->kind = Kind::lincomb;
    c->parts = std::move(parts);
    return c;
  }
};

/// Degree-truncated Lie-closure search over an exact coefficient field.
///
/// Ctx supplies the ambient algebra:
///   using Key;                              ordered monomial labels
///   Elem bracket(const Elem&, const Elem&)  with Elem = map<Key, RatFunc>
///   int degree(const Key&)
/// Brackets may only drop total degree by 2, so a pair of rows whose degree
/// bound lands above budget + slack is skipped before computing anything.
template <class Ctx>
class ClosureEngine {
 public:
  using Key = typename Ctx::Key;
  using Elem = std::map<Key, RatFunc>;

  using ModElem = std::map<Key, std::uint64_t>;

  struct Row {
    Elem v;        // pivot coefficient normalized to 1
    Key pivot;     // smallest key of v
    CertPtr cert;  // replays to v
    int degree;    // max key degree
    ModElem vmod;  // v specialized at n = n0 modulo 2^61 - 1
    bool vmod_ok;  // false when some coefficient hit a pole mod p
  };

  struct Stats {
    long long pairs_processed = 0;
    long long pairs_skipped = 0;
    long long brackets_discarded = 0;
    long long mod_filtered = 0;
    long long targets_unresolved = 0;
    long long bracket_ns = 0;
    long long insert_ns = 0;
    long long member_ns = 0;
    bool dim_cap_hit = false;
    bool stopped_on_targets = false;
  };

  /// Optional observer, called every progress_every processed pairs.
  std::function<void(const Stats&, size_t rows)> on_progress;
  long long progress_every = 0;

  /// When set (before adding generators), each new row is only paired with
  /// the generator rows, not with every existing row. The left-normed
  /// bracket chains explored this way span a subspace of the full pairwise
  /// fixpoint, so every membership verdict and certificate stays valid; the
  /// subspace can be strictly smaller, which only costs coverage.
  bool chain_pairs = false;

  ClosureEngine(Ctx ctx, int budget, int slack, int dim_cap = 20000)
      : ctx_(std::move(ctx)),
        budget_(budget),
        effective_budget_(budget + slack),
        dim_cap_(dim_cap) {}

  int budget() const { return budget_; }
  int effective_budget() const { return effective_budget_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Stats& stats() const { return stats_; }

  static int elem_degree(const Ctx& ctx, const Elem& v) {
    int d = 0;
    for (const auto& [k, c] : v) d = std::max(d, ctx.degree(k));
    return d;
  }

  /// Adds a generator (a fresh leaf) and schedules its pairs.
  void add_generator(const Elem& v) {
    if (insert(v, Cert::make_leaf(next_leaf_++))) ++gen_rows_;
  }

  /// Reduces v against the triangular basis. On a nonzero residual the
  /// normalized remainder becomes a new row and its pairs are enqueued.
  /// Returns the index of the new row, or nullopt when v was in the span.
  std::optional<int> insert(Elem v, CertPtr cert) {
    std::vector<std::pair<RatFunc, CertPtr>> parts{{RatFunc(NPoly(1)), cert}};
    reduce_into(v, &parts);
    if (v.empty()) return std::nullopt;
    if (static_cast<int>(rows_.size()) >= dim_cap_) {
      stats_.dim_cap_hit = true;
      return std::nullopt;
    }
    RatFunc lead = v.begin()->second;
    Elem w;
    for (auto& [k, c] : v) w.emplace(k, c / lead);
    for (auto& [c, p] : parts) c = c / lead;
    Row row{std::move(w), v.begin()->first, Cert::make_lincomb(std::move(parts)),
            elem_degree(ctx_, v), {}, true};
    if (auto m = specialize(row.v))
      row.vmod = std::move(*m);
    else
      row.vmod_ok = false;
    int idx = static_cast<int>(rows_.size());
    pivot_index_.emplace(row.pivot, idx);
    rows_.push_back(std::move(row));
    int first = chain_pairs ? std::min(idx, gen_rows_) : idx;
    for (int i = 0; i < first; ++i) queue_.emplace_back(i, idx);
    return idx;
  }

  /// Runs pending pairs to the fixpoint. If targets are given, stops as soon
  /// as all of them are members; target membership never depends on slack
  /// beyond what the basis already contains.
  void close(const std::vector<Elem>* targets = nullptr) {
    std::vector<char> resolved;
    std::vector<std::optional<ModElem>> tmods;
    if (targets) {
      resolved.assign(targets->size(), 0);
      tmods.reserve(targets->size());
      for (const auto& t : *targets) tmods.push_back(specialize(t));
      if (update_resolved(*targets, tmods, resolved)) {
        stats_.stopped_on_targets = true;
        return;
      }
    }
    int since_check = 0;
    while (!queue_.empty()) {
      auto [i, j] = queue_.front();
      queue_.pop_front();
      if (rows_[i].degree + rows_[j].degree - 2 > effective_budget_) {
        ++stats_.pairs_skipped;
        continue;
      }
      ++stats_.pairs_processed;
      if (progress_every && on_progress &&
          stats_.pairs_processed % progress_every == 0)
        on_progress(stats_, rows_.size());
      auto t0 = std::chrono::steady_clock::now();
      Elem b = ctx_.bracket(rows_[i].v, rows_[j].v);
      auto t1 = std::chrono::steady_clock::now();
      stats_.bracket_ns += (t1 - t0).count();
      if (b.empty()) continue;
      if (elem_degree(ctx_, b) > effective_budget_) {
        ++stats_.brackets_discarded;
        continue;
      }
      // A residual that vanishes under the modular specialization is taken as
      // dependent and dropped without an exact elimination. This can only
      // shrink the computed span, never report a spurious member.
      if (auto bm = specialize(b)) {
        if (mod_reduce(*bm) && bm->empty()) {
          ++stats_.mod_filtered;
          stats_.insert_ns +=
              (std::chrono::steady_clock::now() - t1).count();
          continue;
        }
      }
      auto idx = insert(std::move(b),
                        Cert::make_bracket(rows_[i].cert, rows_[j].cert));
      stats_.insert_ns +=
          (std::chrono::steady_clock::now() - t1).count();
      if (idx && targets && ++since_check >= 25) {
        since_check = 0;
        auto t2 = std::chrono::steady_clock::now();
        bool done = update_resolved(*targets, tmods, resolved);
        stats_.member_ns +=
            (std::chrono::steady_clock::now() - t2).count();
        if (done) {
          stats_.stopped_on_targets = true;
          return;
        }
      }
    }
    if (targets) update_resolved(*targets, tmods, resolved);
  }

  /// Membership with certificate: target = sum of coeff * row certificates.
  std::optional<CertPtr> membership(Elem target) const {
    std::vector<std::pair<RatFunc, CertPtr>> parts;
    reduce_into(target, &parts);
    if (!target.empty()) return std::nullopt;
    for (auto& [c, p] : parts) c = -c;
    return Cert::make_lincomb(std::move(parts));
  }

  bool is_member(Elem target) const {
    reduce_into(target, nullptr);
    return target.empty();
  }

  /// Evaluates a certificate back to an element, memoized across shared
  /// subtrees. Leaves resolve through the generator list in insertion order.
  Elem replay(const CertPtr& cert, const std::vector<Elem>& generators) const {
    std::map<const Cert*, Elem> memo;
    return replay_rec(cert, generators, memo);
  }

  std::map<int, int> basis_size_by_degree() const {
    std::map<int, int> out;
    for (const auto& r : rows_) ++out[r.degree];
    return out;
  }

 private:
  // v -= coeff * row over increasing pivots; rows are triangular so each
  // step removes the current smallest reducible key.
  void reduce_into(Elem& v,
                   std::vector<std::pair<RatFunc, CertPtr>>* parts) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto hit = pivot_index_.find(it->first);
      if (hit == pivot_index_.end()) {
        ++it;
        continue;
      }
      const Row& row = rows_[hit->second];
      RatFunc c = it->second;
      for (const auto& [k, rc] : row.v) {
        auto vit = v.find(k);
        RatFunc nv = (vit == v.end() ? RatFunc() : vit->second) - c * rc;
        if (nv.is_zero()) {
          if (vit != v.end()) v.erase(vit);
        } else if (vit == v.end()) {
          v.emplace(k, std::move(nv));
        } else {
          vit->second = std::move(nv);
        }
      }
      if (parts) parts->emplace_back(-c, row.cert);
      it = v.upper_bound(row.pivot);
    }
  }

  // Image of an element at n = n0 modulo 2^61 - 1; nullopt when some
  // coefficient hits a pole there.
  std::optional<ModElem> specialize(const Elem& v) const {
    ModElem out;
    for (const auto& [k, c] : v) {
      auto m = modp::from_rat_func(c, n0_);
      if (!m) return std::nullopt;
      if (*m) out.emplace(k, *m);
    }
    return out;
  }

  // Modular mirror of reduce_into. Returns false (filter unusable) when a
  // touched row has no valid specialization. A nonzero residual proves the
  // exact residual nonzero; a zero residual is only probabilistic evidence.
  bool mod_reduce(ModElem& v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto hit = pivot_index_.find(it->first);
      if (hit == pivot_index_.end()) {
        ++it;
        continue;
      }
      const Row& row = rows_[hit->second];
      if (!row.vmod_ok) return false;
      std::uint64_t c = it->second;
      for (const auto& [k, rc] : row.vmod) {
        auto vit = v.find(k);
        std::uint64_t nv =
            modp::sub(vit == v.end() ? 0 : vit->second, modp::mul(c, rc));
        if (nv == 0) {
          if (vit != v.end()) v.erase(vit);
        } else if (vit == v.end()) {
          v.emplace(k, nv);
        } else {
          vit->second = nv;
        }
      }
      it = v.upper_bound(row.pivot);
    }
    return true;
  }

  // Rechecks only targets not yet known members; a nonzero modular residual
  // settles non-membership without exact arithmetic, a zero one is confirmed
  // exactly. Returns true when none remain.
  bool update_resolved(const std::vector<Elem>& targets,
                       const std::vector<std::optional<ModElem>>& tmods,
                       std::vector<char>& resolved) {
    long long open = 0;
    for (size_t i = 0; i < targets.size(); ++i) {
      if (resolved[i]) continue;
      if (tmods[i]) {
        ModElem m = *tmods[i];
        if (mod_reduce(m) && !m.empty()) {
          ++open;
          continue;
        }
      }
      if (is_member(targets[i]))
        resolved[i] = 1;
      else
        ++open;
    }
    stats_.targets_unresolved = open;
    return open == 0;
  }

  Elem replay_rec(const CertPtr& cert, const std::vector<Elem>& generators,
                  std::map<const Cert*, Elem>& memo) const {
    auto it = memo.find(cert.get());
    if (it != memo.end()) return it->second;
    Elem out;
    switch (cert->kind) {
      case Cert::Kind::leaf:
        out = generators.at(cert->leaf);
        break;
      case Cert::Kind::bracket:
        out = ctx_.bracket(replay_rec(cert->left, generators, memo),
                           replay_rec(cert->right, generators, memo));
        break;
      case Cert::Kind::lincomb:
        for (const auto& [c, p] : cert->parts) {
          Elem part = replay_rec(p, generators, memo);
          for (const auto& [k, pc] : part) {
            RatFunc nv = out.count(k) ? out[k] + c * pc : c * pc;
            if (nv.is_zero())
              out.erase(k);
            else
              out[k] = std::move(nv);
          }
        }
        break;
    }
    memo.emplace(cert.get(), out);
    return out;
  }

  Ctx ctx_;
  int budget_, effective_budget_, dim_cap_;
  std::uint64_t n0_ = 1000003;  // specialization point for the modular filter
  int next_leaf_ = 0;
  int gen_rows_ = 0;
  std::vector<Row> rows_;
  std::map<Key, int> pivot_index_;
  std::deque<std::pair<int, int>> queue_;
  Stats stats_;
};

}  // namespace cmtrace
