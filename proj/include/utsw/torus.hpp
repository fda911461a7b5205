#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace utsw {

// A coordinate pair on the n x n torus; also used as a vertex label.
// Both coordinates are kept reduced into [0, n).
struct Position {
    int x = 0;
    int y = 0;
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

inline void require_model_size(int n) {
    if (n < 3) throw std::invalid_argument("torus size must be >= 3");
}

inline void require_labeling_size(int n) {
    if (n < 5) throw std::invalid_argument("labeling requires torus size >= 5");
}

inline int mod_n(int v, int n) {
    int r = v % n;
    return r < 0 ? r + n : r;
}

inline int axis_distance(int n, int a, int b) {
    int d = std::abs(a - b);
    return std::min(d, n - d);
}

// d(u,v) = min(|xu-xv|, n-|xu-xv|) + min(|yu-yv|, n-|yu-yv|)
inline int torus_distance(int n, Position u, Position v) {
    return axis_distance(n, u.x, v.x) + axis_distance(n, u.y, v.y);
}

// d' acts on labels rather than vertices; numerically identical to
// torus_distance. The labeling contract is d(u,v) = d'(l(u), l(v)).
inline int label_distance(int n, Position p, Position q) {
    return torus_distance(n, p, q);
}

inline Position label_add(int n, Position a, Position b) {
    return {mod_n(a.x + b.x, n), mod_n(a.y + b.y, n)};
}

inline Position label_sub(int n, Position a, Position b) {
    return {mod_n(a.x - b.x, n), mod_n(a.y - b.y, n)};
}

// Number of one-axis offsets d in [0,n) with min(d, n-d) == a.
inline int axis_class_count(int n, int a) {
    if (a == 0) return 1;
    if (2 * a == n) return 1; // the antipodal column/row exists once for even n
    return 2;
}

// |{v : d(u,v) = i}| for any u; vertex-independent by torus symmetry.
// Equals 4i for i < n/2 and is smaller once rings start to wrap.
inline long ring_size(int n, int i) {
    require_model_size(n);
    if (i < 1 || i > n) throw std::invalid_argument("ring index must be in [1, n]");
    int m = n / 2;
    long count = 0;
    for (int a = std::max(0, i - m); a <= std::min(i, m); ++a)
        count += (long)axis_class_count(n, a) * axis_class_count(n, i - a);
    return count; // 0 when i exceeds the maximum distance 2*(n/2)
}

// All positions at distance exactly i from u. Enumerates offset classes
// (a, i-a) per axis, so wrapped positions that coincide are emitted once.
inline std::vector<Position> ring_members(int n, Position u, int i) {
    require_model_size(n);
    if (i < 1) throw std::invalid_argument("ring index must be >= 1");
    std::vector<Position> out;
    int m = n / 2;
    if (i > 2 * m) return out;
    for (int a = std::max(0, i - m); a <= std::min(i, m); ++a) {
        int b = i - a;
        int dxs[2];
        int ndx = 0;
        dxs[ndx++] = a;
        if (a != 0 && 2 * a != n) dxs[ndx++] = n - a;
        int dys[2];
        int ndy = 0;
        dys[ndy++] = b;
        if (b != 0 && 2 * b != n) dys[ndy++] = n - b;
        for (int ix = 0; ix < ndx; ++ix)
            for (int iy = 0; iy < ndy; ++iy)
                out.push_back({mod_n(u.x + dxs[ix], n), mod_n(u.y + dys[iy], n)});
    }
    return out;
}

// Exact Z = (sum over v != u of d(u,v)^-2)^-1, evaluated by ring summation.
// Summation order is fixed (ascending ring index) so the value is stable.
inline double normalizing_factor(int n) {
    require_model_size(n);
    double sum = 0.0;
    int maxd = 2 * (n / 2);
    for (int i = 1; i <= maxd; ++i)
        sum += (double)ring_size(n, i) / ((double)i * (double)i);
    return 1.0 / sum;
}

// Z < (4 ln(n/2))^-1
inline double z_upper_bound(int n) {
    return 1.0 / (4.0 * std::log((double)n / 2.0));
}

// Z > (4 (ln n + 1))^-1
inline double z_lower_bound(int n) {
    return 1.0 / (4.0 * (std::log((double)n) + 1.0));
}

} // namespace utsw
