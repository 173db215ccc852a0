#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ifslab/ifs.hpp"

namespace ifslab {

enum class ExecMode { serial, parallel };

struct Budgets {
    std::uint64_t max_words = std::uint64_t(1) << 24;
    std::uint64_t max_samples = std::uint64_t(1) << 22;
    int max_coding_depth = 1 << 14;
};

// m^n, or ResourceError naming the bound.
std::uint64_t checked_level_size(int digit_count, int level, std::uint64_t max_words);

// Streaming depth-first enumeration of D^n in lexicographic order. Each child
// map is composed incrementally from its parent.
class LevelEnumerator {
  public:
    LevelEnumerator(const Ifs1D& ifs, int level, const Budgets& budgets = {});

    std::optional<Cylinder> next();
    std::uint64_t total() const { return total_; }

  private:
    const Ifs1D& ifs_;
    int level_;
    std::uint64_t total_;
    std::uint64_t emitted_ = 0;
    Word word_;
    // prefix_maps_[k] = composed map of word_[0..k]
    std::vector<ComposedMap> prefix_maps_;
    bool started_ = false;

    void rebuild_from(int depth);
};

std::vector<Cylinder> enumerate_level(const Ifs1D& ifs, int level, const Budgets& budgets = {});

namespace detail {

// Serial reference: one depth-first scan, visit(word, map, interval) per leaf
// in lexicographic order.
template <class Visit>
void walk_level_serial(const Ifs1D& ifs, int level, Visit&& visit) {
    Word word;
    word.reserve(static_cast<std::size_t>(level));
    auto rec = [&](auto&& self, const ComposedMap& acc, int depth) -> void {
        if (depth == level) {
            visit(word, acc, map_image(acc, ifs.hull));
            return;
        }
        for (int d = 0; d < ifs.digit_count(); ++d) {
            word.push_back(d);
            ComposedMap child =
                depth == 0 ? ifs.map_at(d)
                           : std::visit(
                                 [&](const auto& m) -> ComposedMap {
                                     using M = std::decay_t<decltype(m)>;
                                     return m.after(std::get<M>(ifs.map_at(d)));
                                 },
                                 acc);
            self(self, child, depth + 1);
            word.pop_back();
        }
    };
    ComposedMap identity =
        ifs.kind == MapKind::similarity ? ComposedMap(SimilarityMap()) : ComposedMap(MoebiusMap());
    rec(rec, identity, 0);
}

inline int block_prefix_depth(int digit_count, int level) {
    // fixed function of (m, n) so block boundaries never depend on the
    // thread count; blocks combine in lexicographic order
    int p = 0;
    std::uint64_t blocks = 1;
    while (p < level && blocks < 64) {
        blocks *= static_cast<std::uint64_t>(digit_count);
        ++p;
    }
    return p;
}

}  // namespace detail

// Block-parallel reduction over D^n. PerLeaf maps (word, composed map, cylinder
// interval) to T; T needs operator+=. Block partials are combined in
// lexicographic block order, so the result is independent of scheduling.
template <class T, class PerLeaf>
T level_reduce(const Ifs1D& ifs, int level, T zero, PerLeaf per_leaf, ExecMode mode,
               const Budgets& budgets = {}) {
    checked_level_size(ifs.digit_count(), level, budgets.max_words);
    if (mode == ExecMode::serial) {
        T acc = zero;
        detail::walk_level_serial(ifs, level,
                                  [&](const Word& w, const ComposedMap& m, const RatInterval& iv) {
                                      acc += per_leaf(w, m, iv);
                                  });
        return acc;
    }

    const int p = detail::block_prefix_depth(ifs.digit_count(), level);
    std::vector<Cylinder> prefixes = enumerate_level(ifs, p, budgets);
    std::vector<T> partial(prefixes.size(), zero);

#pragma omp parallel for schedule(dynamic)
    for (long long bi = 0; bi < static_cast<long long>(prefixes.size()); ++bi) {
        const Word& prefix = prefixes[static_cast<std::size_t>(bi)].word;
        ComposedMap base = compose_word(ifs, prefix);
        T acc = zero;
        if (p == level) {
            acc += per_leaf(prefix, base, map_image(base, ifs.hull));
        } else {
            Word word = prefix;
            auto rec = [&](auto&& self, const ComposedMap& m, int depth) -> void {
                if (depth == level) {
                    acc += per_leaf(word, m, map_image(m, ifs.hull));
                    return;
                }
                for (int d = 0; d < ifs.digit_count(); ++d) {
                    word.push_back(d);
                    ComposedMap child = std::visit(
                        [&](const auto& mm) -> ComposedMap {
                            using M = std::decay_t<decltype(mm)>;
                            return mm.after(std::get<M>(ifs.map_at(d)));
                        },
                        m);
                    self(self, child, depth + 1);
                    word.pop_back();
                }
            };
            rec(rec, base, p);
        }
        partial[static_cast<std::size_t>(bi)] = acc;
    }

    T total = zero;
    for (const T& t : partial) total += t;
    return total;
}

}  // namespace ifslab
