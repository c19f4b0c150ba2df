#include "qgibbs/brute.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qgibbs {

long brute_limit(const ModelId& id) {
    switch (id.kind) {
        case ModelKind::DyckExcursion:
        case ModelKind::DyckBridge:
            return 12;  // semilength
        case ModelKind::MotzkinExcursion:
        case ModelKind::MotzkinBridge:
        case ModelKind::WeightedMotzkin:
            return 12;
        case ModelKind::PermFixedPoints:
            return 9;
        case ModelKind::TwoWatermelon:
            return 12;
        case ModelKind::WallWatermelon:
            return id.m <= 3 ? 8 : 0;
        case ModelKind::ColouredWalk:
            return id.m <= 3 ? 16 : 0;
        case ModelKind::QuarterPlane:
            // direct generation; the DP oracle goes to 16 for every kind
            switch (id.qp) {
                case QpKind::Diagonal: return 16;
                case QpKind::Diabolo: return 12;
                case QpKind::King: return 10;
            }
            return 0;
    }
    return 0;
}

bool avoids(const std::vector<int>& perm, int pattern) {
    const int n = static_cast<int>(perm.size());
    {
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        for (int v : perm) {
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
                throw std::domain_error("avoids: input is not a permutation of 1..n");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    if (pattern != 132 && pattern != 213 && pattern != 321)
        throw std::domain_error("avoids: pattern must be 132, 213 or 321");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                int a = perm[static_cast<std::size_t>(i)], b = perm[static_cast<std::size_t>(j)],
                    c = perm[static_cast<std::size_t>(k)];
                bool hit = false;
                switch (pattern) {
                    case 321: hit = a > b && b > c; break;
                    case 132: hit = a < c && c < b; break;
                    case 213: hit = b < a && a < c; break;
                }
                if (hit) return false;
            }
    return true;
}

bool vicious_ok(const std::vector<std::vector<int>>& walkers, bool wall) {
    if (walkers.empty()) return true;
    std::size_t len = walkers[0].size();
    for (const auto& w : walkers)
        if (w.size() != len) throw std::domain_error("vicious_ok: walker length mismatch");
    for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t i = 0; i < walkers.size(); ++i)
            for (std::size_t j = i + 1; j < walkers.size(); ++j)
                if (walkers[i][t] == walkers[j][t]) return false;
        if (wall) {
            int low = walkers[0][t];
            for (const auto& w : walkers) low = std::min(low, w[t]);
            if (low < 0) return false;
        }
    }
    return true;
}

bool friendly_ok(const std::vector<int>& upper, const std::vector<int>& lower) {
    if (upper.size() != lower.size()) throw std::domain_error("friendly_ok: length mismatch");
    for (std::size_t t = 0; t < upper.size(); ++t)
        if (upper[t] < lower[t]) return false;
    return true;
}

namespace {

void bump(Row& row, long k, const Rational& w = Rational(1)) { row[k] += w; }

// directed +-1 / +-1,0 paths of length `len`, starting at 0, ending at 0,
// optionally nonnegative; statistic = returns to altitude 0 at positive
// abscissa. Weighted variant accumulates the path weight.
void path_rows(Row& row, long len, bool allow_flat, bool nonneg, const Rational& pd, const Rational& pf,
               const Rational& pu) {
    bool weighted = !(pd == 1 && pf == 1 && pu == 1);
    std::function<void(long, long, long, Rational)> rec = [&](long t, long h, long rets, Rational w) {
        if (t == len) {
            if (h == 0) bump(row, rets, w);
            return;
        }
        long rem = len - t - 1;
        auto step = [&](long dh, const Rational& pw) {
            long nh = h + dh;
            if (nonneg && nh < 0) return;
            if (std::labs(nh) > rem) return;  // cannot come back to 0
            rec(t + 1, nh, rets + (nh == 0 ? 1 : 0), weighted ? Rational(w * pw) : w);
        };
        step(+1, pu);
        step(-1, pd);
        if (allow_flat) step(0, pf);
    };
    rec(0, 0, 0, Rational(1));
}

void two_watermelon_rows(Row& row, long len) {
    // pairs (upper, lower) of +-1 walks, same start and end, upper >= lower;
    // contacts are shared lattice points at positive abscissa
    std::function<void(long, long, long)> rec = [&](long t, long diff, long contacts) {
        if (t == len) {
            if (diff == 0) bump(row, contacts);
            return;
        }
        long rem = len - t - 1;
        // diff = upper - lower >= 0 changes by -2, 0, +2
        for (long dd : {-2L, 0L, 2L}) {
            long nd = diff + dd;
            if (nd < 0 || nd > 2 * rem) continue;
            long mult = (dd == 0) ? 2 : 1;  // both up or both down keep the gap
            for (long c = 0; c < mult; ++c) rec(t + 1, nd, contacts + (nd == 0 ? 1 : 0));
        }
    };
    rec(0, 0, 0);
}

void wall_watermelon_rows(Row& row, int m, long n) {
    // m vicious walkers from heights 0,2,..,2m-2 back to the same heights in
    // 2n steps, lowest walker nonnegative; statistic = lattice points of the
    // lowest walker on the x-axis including the start
    long len = 2 * n;
    std::vector<int> h(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) h[static_cast<std::size_t>(i)] = 2 * i;
    std::function<void(long, long)> rec = [&](long t, long contacts) {
        if (t == len) {
            bool home = true;
            for (int i = 0; i < m; ++i)
                if (h[static_cast<std::size_t>(i)] != 2 * i) home = false;
            if (home) bump(row, contacts);
            return;
        }
        long rem = len - t;
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            bool ok = true;
            for (int i = 0; i < m && ok; ++i) {
                int nh = h[static_cast<std::size_t>(i)] + ((mask >> i) & 1u ? 1 : -1);
                if (i == 0 && nh < 0) ok = false;
            }
            if (!ok) continue;
            std::vector<int> nh(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                nh[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(i)] + ((mask >> i) & 1u ? 1 : -1);
            for (int i = 0; i + 1 < m && ok; ++i)
                if (nh[static_cast<std::size_t>(i)] >= nh[static_cast<std::size_t>(i + 1)]) ok = false;
            if (ok)
                for (int i = 0; i < m && ok; ++i)
                    if (std::labs(nh[static_cast<std::size_t>(i)] - 2 * i) > rem - 1) ok = false;
            if (!ok) continue;
            std::vector<int> save = h;
            h = nh;
            rec(t + 1, contacts + (h[0] == 0 ? 1 : 0));
            h = save;
        }
    };
    rec(0, 1);  // the starting point is a contact
}

void coloured_walk_rows(Row& row, int m, long n) {
    // object = m-tuple of bridges (sequences of minimal bridges, coloured
    // non-decreasingly) followed by a walk that never returns to 0
    enum Phase { Boundary, InBridge, InTail };
    std::function<void(long, long, int, Phase, long)> rec = [&](long t, long h, int colour, Phase ph,
                                                                long rets) {
        if (t == n) {
            if (ph == Boundary || ph == InTail) bump(row, rets);
            return;
        }
        if (ph == Boundary) {
            // start the next minimal bridge in any colour >= current
            for (int c = colour; c <= m; ++c) {
                rec(t + 1, +1, c, InBridge, rets);
                rec(t + 1, -1, c, InBridge, rets);
            }
            // or start the tail (never to return to 0)
            rec(t + 1, +1, colour, InTail, rets);
            rec(t + 1, -1, colour, InTail, rets);
            return;
        }
        if (ph == InBridge) {
            // a minimal bridge ends at its first return to 0
            for (long dh : {+1L, -1L}) {
                long nh = h + dh;
                if (nh == 0)
                    rec(t + 1, 0, colour, Boundary, rets + 1);
                else
                    rec(t + 1, nh, colour, InBridge, rets);
            }
            return;
        }
        for (long dh : {+1L, -1L}) {
            long nh = h + dh;
            if (nh == 0) continue;  // the tail never returns
            rec(t + 1, nh, colour, InTail, rets);
        }
    };
    rec(0, 0, 1, Boundary, 0);
}

struct QpSteps {
    std::vector<std::pair<int, int>> steps;
};

QpSteps qp_steps(QpKind kind) {
    QpSteps s;
    switch (kind) {
        case QpKind::Diagonal:
            for (int dx : {-1, 1})
                for (int dy : {-1, 1}) s.steps.push_back({dx, dy});
            break;
        case QpKind::Diabolo:
            // x component is a Dyck step, y component a Motzkin step
            for (int dx : {-1, 1})
                for (int dy : {-1, 0, 1}) s.steps.push_back({dx, dy});
            break;
        case QpKind::King:
            for (int dx : {-1, 0, 1})
                for (int dy : {-1, 0, 1}) s.steps.push_back({dx, dy});
            break;
    }
    return s;
}

void quarter_plane_rows(Row& row, const ModelId& id, long n) {
    QpSteps st = qp_steps(id.qp);
    bool axis_x = id.axis == Axis::X;
    std::function<void(long, int, int, long)> rec = [&](long t, int x, int y, long contacts) {
        if (t == n) {
            if (x == 0 && y == 0) bump(row, contacts);
            return;
        }
        long rem = n - t - 1;
        for (auto [dx, dy] : st.steps) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0) continue;
            if (nx > rem || ny > rem) continue;  // every step changes a coordinate by at most 1
            bool contact = axis_x ? (ny == 0) : (nx == 0);
            rec(t + 1, nx, ny, contacts + (contact ? 1 : 0));
        }
    };
    rec(0, 0, 0, 0);
}

}  // namespace

BivariateTable quarter_plane_dp_table(const ModelId& id, long max_n) {
    if (id.kind != ModelKind::QuarterPlane)
        throw std::domain_error("quarter_plane_dp_table: not a quarter-plane model");
    if (max_n > 18) throw std::overflow_error("quarter_plane_dp_table: counts exceed 64 bits past n = 18");
    BivariateTable t;
    t.model = id.name();
    t.max_n = max_n;
    t.rows.assign(static_cast<std::size_t>(max_n) + 1, Row{});

    QpSteps st = qp_steps(id.qp);
    bool axis_x = id.axis == Axis::X;
    long R = max_n;
    auto idx = [R](long x, long y, long k) {
        return static_cast<std::size_t>((x * (R + 1) + y) * (R + 1) + k);
    };
    std::vector<std::uint64_t> cur(static_cast<std::size_t>((R + 1) * (R + 1) * (R + 1)), 0);
    cur[idx(0, 0, 0)] = 1;
    if (!t.rows.empty()) t.rows[0][0] = 1;  // the empty walk has 0 contacts

    std::vector<std::uint64_t> nxt(cur.size());
    for (long step = 1; step <= max_n; ++step) {
        std::fill(nxt.begin(), nxt.end(), 0);
        for (long x = 0; x <= R; ++x)
            for (long y = 0; y <= R; ++y)
                for (long k = 0; k < step; ++k) {
                    std::uint64_t c = cur[idx(x, y, k)];
                    if (c == 0) continue;
                    for (auto [dx, dy] : st.steps) {
                        long nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx > R || ny > R) continue;
                        bool contact = axis_x ? (ny == 0) : (nx == 0);
                        nxt[idx(nx, ny, k + (contact ? 1 : 0))] += c;
                    }
                }
        std::swap(cur, nxt);
        for (long k = 0; k <= step; ++k) {
            std::uint64_t c = cur[idx(0, 0, k)];
            if (c) t.rows[static_cast<std::size_t>(step)][k] = Rational(static_cast<unsigned long>(c));
        }
    }
    return t;
}

BivariateTable brute_table(const ModelId& id, long max_n) {
    long lim = brute_limit(id);
    if (max_n > lim)
        throw std::overflow_error("brute_table: " + id.name() + " supports n <= " + std::to_string(lim));
    BivariateTable t;
    t.model = id.name();
    t.max_n = max_n;
    t.rows.assign(static_cast<std::size_t>(max_n) + 1, Row{});

    for (long n = 0; n <= max_n; ++n) {
        Row& row = t.rows[static_cast<std::size_t>(n)];
        switch (id.kind) {
            case ModelKind::DyckExcursion:
                path_rows(row, 2 * n, false, true, Rational(1), Rational(1), Rational(1));
                break;
            case ModelKind::DyckBridge:
                path_rows(row, 2 * n, false, false, Rational(1), Rational(1), Rational(1));
                break;
            case ModelKind::MotzkinExcursion:
                path_rows(row, n, true, true, Rational(1), Rational(1), Rational(1));
                break;
            case ModelKind::MotzkinBridge:
                path_rows(row, n, true, false, Rational(1), Rational(1), Rational(1));
                break;
            case ModelKind::WeightedMotzkin:
                path_rows(row, n, true, true, id.p_down, id.p_flat, id.p_up);
                break;
            case ModelKind::PermFixedPoints: {
                std::vector<int> perm(static_cast<std::size_t>(n));
                std::iota(perm.begin(), perm.end(), 1);
                if (n == 0) {
                    row[0] = 1;
                    break;
                }
                do {
                    if (!avoids(perm, id.pattern)) continue;
                    long fp = 0;
                    for (long i = 0; i < n; ++i)
                        if (perm[static_cast<std::size_t>(i)] == i + 1) ++fp;
                    bump(row, fp);
                } while (std::next_permutation(perm.begin(), perm.end()));
                break;
            }
            case ModelKind::TwoWatermelon:
                two_watermelon_rows(row, n);
                break;
            case ModelKind::WallWatermelon:
                if (n >= 1) wall_watermelon_rows(row, id.m, n);
                break;  // no n = 0 row by convention
            case ModelKind::ColouredWalk:
                coloured_walk_rows(row, id.m, n);
                break;
            case ModelKind::QuarterPlane:
                quarter_plane_rows(row, id, n);
                break;
        }
    }
    return t;
}

}  // namespace qgibbs
