#include "framedrag/basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace framedrag {

namespace {

constexpr double small_mode_max_2l = 4096.0;

bool is_small(double l_top) {
    const double two_l = 2.0 * l_top;
    return two_l <= small_mode_max_2l && two_l == std::floor(two_l);
}

} // namespace

double SphereBasis::piece_l_minus_m(int i) const {
    const Site& s = sites_[i];
    return (l0_ - anchor_base_[s.anchor]) + static_cast<double>(s.shell - s.offset);
}
double SphereBasis::piece_l_plus_m_plus1(int i) const {
    const Site& s = sites_[i];
    return (l0_ + anchor_base_[s.anchor]) + static_cast<double>(s.shell + s.offset + 1);
}
double SphereBasis::piece_l_plus_m(int i) const {
    const Site& s = sites_[i];
    return (l0_ + anchor_base_[s.anchor]) + static_cast<double>(s.shell + s.offset);
}
double SphereBasis::piece_l_minus_m_plus1(int i) const {
    const Site& s = sites_[i];
    return (l0_ - anchor_base_[s.anchor]) + static_cast<double>(s.shell - s.offset + 1);
}

double SphereBasis::ladder_plus(int i) const {
    const double a = piece_l_minus_m(i);
    const double b = piece_l_plus_m_plus1(i);
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return std::sqrt(a * b);
}

double SphereBasis::ladder_minus(int i) const {
    const double a = piece_l_plus_m(i);
    const double b = piece_l_minus_m_plus1(i);
    if (a <= 0.0 || b <= 0.0) return 0.0;
    return std::sqrt(a * b);
}

int SphereBasis::up(int i) const {
    const Site& s = sites_[i];
    return index_of({s.shell, s.anchor, s.offset + 1});
}

int SphereBasis::down(int i) const {
    const Site& s = sites_[i];
    return index_of({s.shell, s.anchor, s.offset - 1});
}

SphereBasis SphereBasis::windows(double l0, const std::vector<AnchoredM>& anchors, int half_width) {
    return shell_windows(l0, 0, anchors, half_width);
}

SphereBasis SphereBasis::shell_windows(double l0, int shell_half_width,
                                       const std::vector<AnchoredM>& anchors, int m_half_width) {
    if (l0 < 0) throw std::invalid_argument("l0 negative");
    if (m_half_width < 0 || shell_half_width < 0) throw std::invalid_argument("negative window width");
    if (l0 - shell_half_width < 0) throw std::invalid_argument("shell window reaches below l=0");
    if (anchors.empty()) throw std::invalid_argument("no anchors");

    SphereBasis b;
    b.l0_ = l0;
    b.half_width_ = m_half_width;
    b.small_mode_ = is_small(l0 + shell_half_width);

    std::set<std::tuple<int, int, int>> keys;
    if (b.small_mode_) {
        // merged integer grid: single anchor at base -l0
        b.anchor_base_ = {-l0};
        for (int shell = -shell_half_width; shell <= shell_half_width; ++shell) {
            const int off_lo = -shell;                                      // m = -(l0+shell)
            const int off_hi = static_cast<int>(std::lround(2.0 * l0)) + shell; // m = +(l0+shell)
            for (const auto& a : anchors) {
                const double off_a_d = (a.base + a.offset) + l0; // m_anchor - (-l0)
                const int off_a = static_cast<int>(std::lround(off_a_d));
                if (std::abs(off_a - off_a_d) > 1e-9)
                    throw std::invalid_argument("anchor m incompatible with the ladder grid");
                for (int off = off_a - m_half_width; off <= off_a + m_half_width; ++off) {
                    if (off < off_lo || off > off_hi) continue;
                    keys.insert(std::tuple(shell, 0, off));
                }
            }
        }
    } else {
        // unique bases, exact double equality
        for (const auto& a : anchors)
            if (std::find(b.anchor_base_.begin(), b.anchor_base_.end(), a.base) == b.anchor_base_.end())
                b.anchor_base_.push_back(a.base);
        // disjointness across distinct bases
        for (size_t i = 0; i < anchors.size(); ++i)
            for (size_t j = i + 1; j < anchors.size(); ++j) {
                if (anchors[i].base == anchors[j].base) continue;
                const double dist = std::abs((anchors[i].base - anchors[j].base) +
                                             static_cast<double>(anchors[i].offset - anchors[j].offset));
                if (dist <= 2.0 * m_half_width + 1.0)
                    throw std::invalid_argument("large-l anchor windows overlap; merging needs small-l mode");
            }
        for (int shell = -shell_half_width; shell <= shell_half_width; ++shell) {
            for (const auto& a : anchors) {
                const int aid = static_cast<int>(
                    std::find(b.anchor_base_.begin(), b.anchor_base_.end(), a.base) -
                    b.anchor_base_.begin());
                for (int d = -m_half_width; d <= m_half_width; ++d) {
                    const Site s{shell, aid, a.offset + d};
                    // clip |m| <= l in exact pieces
                    const double lm = (l0 - a.base) + static_cast<double>(shell - s.offset);
                    const double lp = (l0 + a.base) + static_cast<double>(shell + s.offset);
                    if (lm < 0.0 || lp < 0.0) continue;
                    keys.insert(s.key());
                }
            }
        }
    }

    for (const auto& k : keys)
        b.sites_.push_back(Site{std::get<0>(k), std::get<1>(k), std::get<2>(k)});
    b.finalize();
    return b;
}

void SphereBasis::finalize() {
    std::sort(sites_.begin(), sites_.end(),
              [](const Site& x, const Site& y) { return x.key() < y.key(); });
    lookup_.clear();
    for (int i = 0; i < static_cast<int>(sites_.size()); ++i)
        lookup_[sites_[i].key()] = i;
    if (sites_.empty()) throw std::invalid_argument("empty basis window");
}

int SphereBasis::index_of(const Site& s) const {
    auto it = lookup_.find(s.key());
    return it == lookup_.end() ? -1 : it->second;
}

int SphereBasis::locate(int shell, AnchoredM m) const {
    if (small_mode_) {
        const double off_d = (m.base + m.offset) + l0_;
        const int off = static_cast<int>(std::lround(off_d));
        if (std::abs(off - off_d) > 1e-9) return -1;
        return index_of({shell, 0, off});
    }
    for (int a = 0; a < static_cast<int>(anchor_base_.size()); ++a)
        if (anchor_base_[a] == m.base) {
            const int i = index_of({shell, a, m.offset});
            if (i >= 0) return i;
        }
    return -1;
}

bool SphereBasis::artificial_edge(int i) const {
    const bool up_missing = up(i) < 0 && ladder_plus(i) > 0.0;
    const bool dn_missing = down(i) < 0 && ladder_minus(i) > 0.0;
    return up_missing || dn_missing;
}

ProductBasisPtr make_product_basis(SphereBasis a, SphereBasis b) {
    auto p = std::make_shared<ProductBasis>();
    p->a = std::move(a);
    p->b = std::move(b);
    return p;
}

} // namespace framedrag
