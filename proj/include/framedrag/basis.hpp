#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <vector>

namespace framedrag {

// Magnetic quantum number kept in exact pieces: m = base + offset, where the
// base is an anchor value (0, +-l0, or any interior reference) and the offset
// a small integer. At l0 ~ 1e23 the rounded sum cannot resolve unit offsets,
// so ladder factors and m-differences are always formed from the pieces.
// base = +-l0 keeps the ladder edges exact: l0 - base and l0 + base are
// exact floating-point subtractions there.
struct AnchoredM {
    double base = 0.0;
    int offset = 0;
    AnchoredM negated() const { return {-base, -offset}; }
    double value() const { return base + offset; }
};

// One basis site of a single sphere: l = l0 + shell, m = base(anchor) + offset.
struct Site {
    int shell = 0;
    int anchor = 0; // index into the basis anchor table
    int offset = 0;
    auto key() const { return std::tuple(shell, anchor, offset); }
};

// Truncated window(s) of a single sphere. Small-l windows (2*l integer and
// <= 4096) merge onto the full integer grid under a single -l0 anchor; large-l
// windows keep one disjoint segment per anchor base.
class SphereBasis {
public:
    // single shell (shell offset 0)
    static SphereBasis windows(double l0, const std::vector<AnchoredM>& anchors, int half_width);
    // shells l0-shell_half .. l0+shell_half, same m-window per shell, clipped
    // at each shell's own ladder edges
    static SphereBasis shell_windows(double l0, int shell_half_width,
                                     const std::vector<AnchoredM>& anchors, int m_half_width);

    double l0() const { return l0_; }
    int dim() const { return static_cast<int>(sites_.size()); }
    const Site& site(int i) const { return sites_[i]; }
    const std::vector<Site>& sites() const { return sites_; }
    double anchor_base(int a) const { return anchor_base_[a]; }
    int index_of(const Site& s) const; // -1 if absent
    int locate(int shell, AnchoredM m) const; // -1 if absent
    bool small_mode() const { return small_mode_; }
    int half_width() const { return half_width_; }

    double l_of(int i) const { return l0_ + sites_[i].shell; }
    double m_of(int i) const { return anchor_base_[sites_[i].anchor] + sites_[i].offset; }

    // exact-piece ladder arithmetic at site i
    double piece_l_minus_m(int i) const;
    double piece_l_plus_m_plus1(int i) const;
    double piece_l_plus_m(int i) const;
    double piece_l_minus_m_plus1(int i) const;
    // sqrt((l-m)(l+m+1)); exact zero at the ladder top
    double ladder_plus(int i) const;
    // sqrt((l+m)(l-m+1)); exact zero at the ladder bottom
    double ladder_minus(int i) const;
    // neighbour site indices within the shell (-1 when truncated away)
    int up(int i) const;
    int down(int i) const;

    // site sits at an artificial window edge: its in-shell ladder neighbour
    // exists physically but is not in the basis
    bool artificial_edge(int i) const;

private:
    double l0_ = 0;
    int half_width_ = 0;
    bool small_mode_ = false;
    std::vector<double> anchor_base_;
    std::vector<Site> sites_;
    std::map<std::tuple<int, int, int>, int> lookup_;

    void finalize();
};

struct ProductBasis {
    SphereBasis a, b;
    int dim() const { return a.dim() * b.dim(); }
    int index(int ia, int ib) const { return ia * b.dim() + ib; }
    std::pair<int, int> split(int i) const { return {i / b.dim(), i % b.dim()}; }
};

using ProductBasisPtr = std::shared_ptr<const ProductBasis>;

ProductBasisPtr make_product_basis(SphereBasis a, SphereBasis b);

} // namespace framedrag
