#include "ifslab/enumerate.hpp"

namespace ifslab {

std::uint64_t checked_level_size(int digit_count, int level, std::uint64_t max_words) {
    if (level < 0) throw ValidationError("level must be nonnegative");
    std::uint64_t n = 1;
    for (int i = 0; i < level; ++i) {
        if (n > max_words / static_cast<std::uint64_t>(digit_count))
            throw ResourceError("level " + std::to_string(level) + " exceeds the word budget of " +
                                std::to_string(max_words) + " cylinders");
        n *= static_cast<std::uint64_t>(digit_count);
    }
    if (n > max_words)
        throw ResourceError("level " + std::to_string(level) + " exceeds the word budget of " +
                            std::to_string(max_words) + " cylinders");
    return n;
}

LevelEnumerator::LevelEnumerator(const Ifs1D& ifs, int level, const Budgets& budgets)
    : ifs_(ifs), level_(level),
      total_(checked_level_size(ifs.digit_count(), level, budgets.max_words)) {
    if (level < 1) throw ValidationError("level must be >= 1");
    word_.assign(static_cast<std::size_t>(level), 0);
    prefix_maps_.resize(static_cast<std::size_t>(level));
}

void LevelEnumerator::rebuild_from(int depth) {
    for (int k = depth; k < level_; ++k) {
        ComposedMap step = ifs_.map_at(word_[static_cast<std::size_t>(k)]);
        if (k == 0) {
            prefix_maps_[0] = step;
        } else {
            prefix_maps_[static_cast<std::size_t>(k)] = std::visit(
                [&](const auto& m) -> ComposedMap {
                    using M = std::decay_t<decltype(m)>;
                    return m.after(std::get<M>(step));
                },
                prefix_maps_[static_cast<std::size_t>(k - 1)]);
        }
    }
}

std::optional<Cylinder> LevelEnumerator::next() {
    if (emitted_ == total_) return std::nullopt;
    if (!started_) {
        started_ = true;
        rebuild_from(0);
    } else {
        int k = level_ - 1;
        while (k >= 0 && word_[static_cast<std::size_t>(k)] == ifs_.digit_count() - 1) {
            word_[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        ++word_[static_cast<std::size_t>(k)];
        rebuild_from(k);
    }
    ++emitted_;
    Cylinder c;
    c.word = word_;
    c.interval = map_image(prefix_maps_.back(), ifs_.hull);
    return c;
}

std::vector<Cylinder> enumerate_level(const Ifs1D& ifs, int level, const Budgets& budgets) {
    std::vector<Cylinder> out;
    out.reserve(checked_level_size(ifs.digit_count(), level, budgets.max_words));
    LevelEnumerator en(ifs, level, budgets);
    while (auto c = en.next()) out.push_back(std::move(*c));
    return out;
}

}  // namespace ifslab
