#include "ifslab/ifs.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace ifslab {

std::string word_str(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s.push_back('.');
        s += std::to_string(w[i] + 1);
    }
    return s;
}

Word parse_word(std::string_view text, int digit_count) {
    Word w;
    bool separated = text.find(',') != std::string_view::npos ||
                     text.find('.') != std::string_view::npos;
    auto push = [&](long v) {
        if (v < 1 || v > digit_count)
            throw ValidationError("word digit " + std::to_string(v) + " outside 1.." +
                                  std::to_string(digit_count));
        w.push_back(static_cast<int>(v - 1));
    };
    if (separated) {
        std::string tok;
        std::istringstream in{std::string(text)};
        while (std::getline(in, tok, text.find(',') != std::string_view::npos ? ',' : '.')) {
            if (tok.empty()) continue;
            push(std::stol(tok));
        }
    } else {
        for (char ch : text) {
            if (std::isspace(static_cast<unsigned char>(ch))) continue;
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw ValidationError("bad word literal");
            push(ch - '0');
        }
    }
    if (w.empty()) throw ValidationError("empty word");
    return w;
}

RatInterval Ifs1D::map_image_of_hull(int digit) const {
    return map_image(map_at(digit), hull);
}

ComposedMap Ifs1D::map_at(int digit) const {
    if (digit < 0 || digit >= digit_count())
        throw ValidationError("digit " + std::to_string(digit + 1) + " out of range");
    if (kind == MapKind::similarity) return sim[static_cast<std::size_t>(digit)];
    return moe[static_cast<std::size_t>(digit)];
}

Rat Ifs1D::max_contraction() const {
    Rat best(0);
    for (int i = 0; i < digit_count(); ++i) {
        if (kind == MapKind::similarity) {
            best = std::max(best, sim[static_cast<std::size_t>(i)].ratio);
        } else {
            const auto& m = moe[static_cast<std::size_t>(i)];
            // 1/(cx+d)^2 is monotone on a pole-free interval
            best = std::max(best, std::max(m.deriv_abs_at(hull.lo), m.deriv_abs_at(hull.hi)));
        }
    }
    return best;
}

void Ifs1D::validate() const {
    if (digit_count() < 2) throw ValidationError("an IFS needs at least 2 maps");
    for (int i = 0; i < digit_count(); ++i) {
        RatInterval img = map_image_of_hull(i);
        if (!hull.contains(img))
            throw ValidationError("map " + std::to_string(i + 1) +
                                  " does not send the hull into itself");
        if (kind == MapKind::similarity) {
            const auto& m = sim[static_cast<std::size_t>(i)];
            if (!(m.ratio > 0 && m.ratio < 1))
                throw ValidationError("similarity ratio must lie in (0,1)");
        } else {
            const auto& m = moe[static_cast<std::size_t>(i)];
            if (abs(m.det()) != 1)
                throw ValidationError("moebius determinant must be +-1");
            if (m.pole_in(hull)) throw ValidationError("moebius pole inside the hull");
        }
    }
    if (kind == MapKind::moebius && !iterated_contraction_only) {
        if (max_contraction() >= 1)
            throw ValidationError(
                "moebius maps are not contractions on the hull; "
                "set iterated_contraction_only if compositions contract");
    }
}

Ifs1D Ifs1D::similarity(std::vector<SimilarityMap> maps, RatInterval hull, std::string name) {
    Ifs1D f;
    f.kind = MapKind::similarity;
    f.sim = std::move(maps);
    f.hull = std::move(hull);
    f.name = std::move(name);
    f.validate();
    return f;
}

Ifs1D Ifs1D::moebius(std::vector<MoebiusMap> maps, RatInterval hull, std::string name,
                     bool iterated_only) {
    Ifs1D f;
    f.kind = MapKind::moebius;
    f.moe = std::move(maps);
    f.hull = std::move(hull);
    f.name = std::move(name);
    f.iterated_contraction_only = iterated_only;
    f.validate();
    return f;
}

Ifs1D Ifs1D::preset(const std::string& name) {
    auto I = [](long a, long b) { return RatInterval(Rat(a), Rat(b)); };
    if (name == "cantor3")
        return similarity({SimilarityMap(rat(1, 3), Rat(0)), SimilarityMap(rat(1, 3), rat(2, 3))},
                          I(0, 1), name);
    if (name == "ex21")
        return similarity({SimilarityMap(rat(3, 4), Rat(0)), SimilarityMap(rat(1, 4), rat(3, 4))},
                          I(0, 1), name);
    if (name == "ex22")
        return similarity({SimilarityMap(rat(1, 2), Rat(0)), SimilarityMap(rat(1, 2), rat(1, 2))},
                          I(0, 1), name);
    if (name == "cf12")
        // phi_i(x) = 1/(x+i); [1/3, 3/4] is invariant and pole-free, and both
        // maps already contract on it
        return moebius({MoebiusMap(0, 1, 1, 1), MoebiusMap(0, 1, 1, 2)},
                       RatInterval(rat(1, 3), rat(3, 4)), name);
    if (name == "overlap_demo")
        return similarity({SimilarityMap(rat(1, 4), Rat(0)), SimilarityMap(rat(1, 4), rat(1, 4)),
                           SimilarityMap(rat(1, 2), Rat(0))},
                          RatInterval(Rat(0), rat(1, 3)), name);
    throw ValidationError("unknown preset '" + name + "'");
}

std::vector<std::string> Ifs1D::preset_names() {
    return {"cantor3", "ex21", "ex22", "cf12", "overlap_demo"};
}

Ifs1D Ifs1D::from_config(std::istream& in, const std::string& name) {
    std::string kind;
    std::optional<RatInterval> hull;
    std::vector<std::vector<std::string>> map_fields;
    bool iterated_only = false;

    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::string eq;
        ls >> eq;
        if (eq != "=") throw ValidationError("expected 'key = value' in IFS config: " + line);
        std::vector<std::string> vals;
        std::string tok;
        while (ls >> tok) vals.push_back(tok);
        if (key == "kind") {
            if (vals.size() != 1) throw ValidationError("kind takes one value");
            kind = vals[0];
        } else if (key == "hull") {
            if (vals.size() != 2) throw ValidationError("hull takes two endpoints");
            hull = RatInterval(parse_rat(vals[0]), parse_rat(vals[1]));
        } else if (key == "map") {
            map_fields.push_back(vals);
        } else if (key == "iterated_contraction_only") {
            iterated_only = vals.size() == 1 && (vals[0] == "true" || vals[0] == "1");
        } else {
            throw ValidationError("unknown IFS config key '" + key + "'");
        }
    }
    if (!hull) throw ValidationError("IFS config missing hull");
    if (kind == "similarity") {
        std::vector<SimilarityMap> maps;
        for (const auto& f : map_fields) {
            if (f.size() != 2 && f.size() != 3)
                throw ValidationError("similarity map needs: ratio translation [sign]");
            int sign = +1;
            if (f.size() == 3) {
                if (f[2] == "-") sign = -1;
                else if (f[2] != "+") throw ValidationError("map sign must be + or -");
            }
            maps.emplace_back(parse_rat(f[0]), parse_rat(f[1]), sign);
        }
        return similarity(std::move(maps), *hull, name);
    }
    if (kind == "moebius") {
        std::vector<MoebiusMap> maps;
        for (const auto& f : map_fields) {
            if (f.size() != 4) throw ValidationError("moebius map needs: a b c d");
            maps.emplace_back(Int(f[0]), Int(f[1]), Int(f[2]), Int(f[3]));
        }
        return moebius(std::move(maps), *hull, name, iterated_only);
    }
    throw ValidationError("IFS config kind must be 'similarity' or 'moebius'");
}

ComposedMap compose_word(const Ifs1D& ifs, const Word& word, bool allow_empty) {
    if (word.empty()) {
        if (!allow_empty) throw ValidationError("empty word (pass allow_empty for identity)");
        if (ifs.kind == MapKind::similarity) return SimilarityMap();
        return MoebiusMap();
    }
    for (int d : word)
        if (d < 0 || d >= ifs.digit_count())
            throw ValidationError("word digit out of range");
    if (ifs.kind == MapKind::similarity) {
        SimilarityMap acc = ifs.sim[static_cast<std::size_t>(word.front())];
        for (std::size_t i = 1; i < word.size(); ++i)
            acc = acc.after(ifs.sim[static_cast<std::size_t>(word[i])]);
        return acc;
    }
    MoebiusMap acc = ifs.moe[static_cast<std::size_t>(word.front())];
    for (std::size_t i = 1; i < word.size(); ++i)
        acc = acc.after(ifs.moe[static_cast<std::size_t>(word[i])]);
    return acc;
}

Cylinder cylinder_of(const Ifs1D& ifs, const Word& word) {
    Cylinder c;
    c.word = word;
    c.interval = map_image(compose_word(ifs, word), ifs.hull);
    if (!ifs.hull.contains(c.interval))
        throw InternalCheckError("cylinder escaped the hull");
    return c;
}

PointApprox point_of_coding(const Ifs1D& ifs, const Word& coding, int depth) {
    if (depth < 1 || depth > static_cast<int>(coding.size()))
        throw ValidationError("depth must be in 1..|coding|");
    Word prefix(coding.begin(), coding.begin() + depth);
    RatInterval iv = cylinder_of(ifs, prefix).interval;
    return PointApprox{iv.midpoint(), iv.diameter() / 2};
}

}  // namespace ifslab
