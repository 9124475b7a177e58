#ifndef QQFORGE_QQCHAR_HPP
#define QQFORGE_QQCHAR_HPP

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "qqforge/ycalc.hpp"

namespace qqforge {

// One-box alphabet letter. value 0 is the fermionic middle letter; osp has a
// barred twin of it.
struct Letter {
    int value = 0;
    bool barred = false;

    friend bool operator==(Letter a, Letter b) { return a.value == b.value && a.barred == b.barred; }
    friend bool operator<(Letter a, Letter b) {
        if (a.value != b.value) return a.value < b.value;
        return a.barred < b.barred;
    }
    std::string str() const { return std::to_string(value) + (barred ? "b" : ""); }
};

// Alphabet in increasing order (top letter first).
inline std::vector<Letter> alphabet(const CartanMatrix& C) {
    std::vector<Letter> out;
    switch (C.family) {
        case Family::gl_sym:
            for (int v = C.n; v >= 1; --v) out.push_back({v, false});
            out.push_back({0, false});
            for (int v = 1; v <= C.n; ++v) out.push_back({v, true});
            return out;
        case Family::osp:
            for (int v = C.n; v >= 1; --v) out.push_back({v, false});
            out.push_back({0, false});
            out.push_back({0, true});
            for (int v = 1; v <= C.n; ++v) out.push_back({v, true});
            return out;
        case Family::gl_std:
            for (int v = C.n; v >= 1; --v) out.push_back({v, false});
            for (int v = 1; v <= C.m; ++v) out.push_back({v, true});
            return out;
        default:
            throw unsupported_family("alphabet: builtin families only");
    }
}

// The monomial of the one-box character attached to a letter, at unit shift.
inline YMonomial letter_monomial(const CartanMatrix& C, Letter L) {
    const int n = C.n;
    auto Y = [&](int value, bool barred, ParamMonomial s, int e) {
        return YMonomial::generator(C.index_of({value, barred}), s, e);
    };
    auto Q = [](int e) { return ParamMonomial::q(e); };
    auto QS = [](int qe, int se) { return ParamMonomial{se, qe}; };  // q^qe * s1^se

    switch (C.family) {
        case Family::gl_sym: {
            if (!L.barred && L.value == n && n >= 2) return Y(n, false, Q(0), 1);
            if (!L.barred && L.value >= 2)
                return Y(L.value, false, Q(n - L.value), 1) * Y(L.value + 1, false, Q(n - L.value + 1), -1);
            if (!L.barred && L.value == 1) {
                YMonomial m = Y(1, false, QS(n - 1, 1), -1) * Y(1, false, QS(n - 1, -1), 1);
                if (n >= 2) m = m * Y(2, false, Q(n), -1);
                return m;
            }
            if (L.value == 0)
                return Y(1, false, QS(n - 1, 1), -1) * Y(1, false, QS(n + 1, 1), 1) *
                       Y(1, true, Q(n - 1), 1) * Y(1, true, Q(n + 1), -1);
            if (L.barred && L.value == 1) {
                YMonomial m = Y(1, true, Q(n + 1), -1) * Y(1, true, QS(n + 1, 2), 1);
                if (n >= 2) m = m * Y(2, true, QS(n, 1), 1);
                return m;
            }
            // barred, 2 <= v <= n
            YMonomial m = Y(L.value, true, QS(n + L.value, 1), -1);
            if (L.value < n) m = m * Y(L.value + 1, true, QS(n + L.value - 1, 1), 1);
            return m;
        }
        case Family::osp: {
            if (!L.barred && L.value == n) return Y(n, false, Q(0), 1);
            if (!L.barred && L.value >= 2)
                return Y(L.value, false, Q(n - L.value), 1) * Y(L.value + 1, false, Q(n - L.value + 1), -1);
            if (!L.barred && L.value == 1)
                return Y(2, false, Q(n), -1) * Y(1, false, QS(n - 1, 1), -1) *
                       Y(1, false, QS(n - 1, -1), 1) * Y(1, true, QS(n - 1, 1), -1) *
                       Y(1, true, QS(n - 1, -1), 1);
            if (L.value == 0 && !L.barred)
                return Y(1, false, QS(n - 1, 1), -1) * Y(1, false, QS(n + 1, 1), 1) *
                       Y(1, true, QS(n - 1, -1), 1) * Y(1, true, QS(n + 1, -1), -1);
            if (L.value == 0 && L.barred)
                return Y(1, false, QS(n - 1, -1), 1) * Y(1, false, QS(n + 1, -1), -1) *
                       Y(1, true, QS(n - 1, 1), -1) * Y(1, true, QS(n + 1, 1), 1);
            if (L.barred && L.value == 1)
                return Y(1, false, QS(n + 1, -1), -1) * Y(1, false, QS(n + 1, 1), 1) *
                       Y(1, true, QS(n + 1, -1), -1) * Y(1, true, QS(n + 1, 1), 1) *
                       Y(2, false, Q(n), 1);
            // barred letters v >= 2 live on the unbarred colors
            YMonomial m = Y(L.value, false, Q(n + L.value), -1);
            if (L.value < n) m = m * Y(L.value + 1, false, Q(n + L.value - 1), 1);
            return m;
        }
        case Family::gl_std: {
            const int mm = C.m;
            if (!L.barred && L.value == n && n >= 2) return Y(n - 1, false, Q(0), 1);
            if (!L.barred && L.value >= 2)
                return Y(L.value - 1, false, Q(n - L.value), 1) *
                       Y(L.value, false, Q(n - L.value + 1), -1);
            if (!L.barred && L.value == 1) {
                YMonomial m = Y(0, false, QS(n - 1, 1), -1) * Y(0, false, QS(n - 1, -1), 1);
                if (n >= 2) m = m * Y(1, false, Q(n), -1);
                return m;
            }
            if (L.barred && L.value == 1) {
                YMonomial m = Y(0, false, QS(n - 1, 1), -1) * Y(0, false, QS(n + 1, 1), 1);
                if (mm >= 2) m = m * Y(1, true, Q(n), 1);
                return m;
            }
            // barred, 2 <= v <= m
            YMonomial m = Y(L.value - 1, true, ParamMonomial{L.value, n}, -1);  // q^n s1^v
            if (L.value < mm) m = m * Y(L.value, true, ParamMonomial{L.value - 1, n}, 1);
            return m;
        }
        default:
            throw unsupported_family("letter_monomial: builtin families only");
    }
}

// chi_{1,1}: the one-box character, one monomial per letter.
inline QQChar chi_vector(const CartanMatrix& C) {
    QQChar chi(&C);
    for (Letter L : alphabet(C)) chi.add_term(letter_monomial(C, L), 1);
    return chi;
}

// chi_{k,1} for the symmetric gl family: weakly increasing fillings of a
// k-box column where only the letter 0 may repeat; box s carries tau shift
// q^{k+1-2s}.
inline QQChar chi_column(const CartanMatrix& C, int k) {
    if (C.family != Family::gl_sym) throw unsupported_family("chi_column: gl_sym only");
    if (k < 1 || k > C.n) throw out_of_range("chi_column: need 1 <= k <= n");
    auto alpha = alphabet(C);
    QQChar chi(&C);
    std::vector<int> fill(k, 0);
    std::function<void(int, int)> rec = [&](int box, int min_letter) {
        if (box == k) {
            YMonomial m;
            for (int s = 0; s < k; ++s)
                m = m * letter_monomial(C, alpha[fill[s]]).tau(ParamMonomial::q(k - 1 - 2 * s));
            chi.add_term(m, 1);
            return;
        }
        for (int a = min_letter; a < static_cast<int>(alpha.size()); ++a) {
            fill[box] = a;
            bool repeatable = alpha[a].value == 0;
            rec(box + 1, repeatable ? a : a + 1);
        }
    };
    rec(0, 0);
    return chi;
}

struct HookPartition {
    std::vector<int> parts;  // weakly decreasing positive

    static HookPartition rectangle(int rows, int cols) {
        return HookPartition{std::vector<int>(rows, cols)};
    }
};

inline void check_hook(const CartanMatrix& C, const HookPartition& lam) {
    for (size_t i = 0; i < lam.parts.size(); ++i) {
        if (lam.parts[i] < 1) throw not_hook("hook: parts must be positive");
        if (i > 0 && lam.parts[i] > lam.parts[i - 1])
            throw not_hook("hook: parts must weakly decrease");
    }
    if (static_cast<int>(lam.parts.size()) > C.n && lam.parts[C.n] > C.m)
        throw not_hook("hook: row n+1 exceeds m");
}

// chi_{lambda,1} for the standard gl family: semistandard fillings, barred
// letters repeat down columns, unbarred letters repeat along rows; box (i,j)
// carries tau shift q^{-2i} s1^{-2j}.
inline QQChar chi_hook(const CartanMatrix& C, const HookPartition& lam) {
    if (C.family != Family::gl_std) throw unsupported_family("chi_hook: gl_std only");
    check_hook(C, lam);
    auto alpha = alphabet(C);
    const int rows = static_cast<int>(lam.parts.size());
    std::vector<std::vector<int>> T(rows);
    for (int i = 0; i < rows; ++i) T[i].assign(lam.parts[i], -1);
    QQChar chi(&C);
    std::function<void(int, int)> rec = [&](int i, int j) {
        if (i == rows) {
            YMonomial m;
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < lam.parts[r]; ++c)
                    m = m * letter_monomial(C, alpha[T[r][c]])
                                .tau(ParamMonomial{-2 * (c + 1), -2 * (r + 1)});
            chi.add_term(m, 1);
            return;
        }
        int ni = i, nj = j + 1;
        if (nj == lam.parts[i]) { ni = i + 1; nj = 0; }
        for (int a = 0; a < static_cast<int>(alpha.size()); ++a) {
            if (j > 0) {  // row constraint vs left neighbor
                int left = T[i][j - 1];
                if (a < left) continue;
                if (a == left && alpha[a].barred) continue;
            }
            if (i > 0 && j < lam.parts[i - 1]) {  // column constraint vs upper neighbor
                int up = T[i - 1][j];
                if (a < up) continue;
                if (a == up && !alpha[a].barred) continue;
            }
            T[i][j] = a;
            rec(ni, nj);
            T[i][j] = -1;
        }
    };
    if (rows == 0) { chi.add_term(YMonomial(), 1); return chi; }
    rec(0, 0);
    return chi;
}

// ---------------------------------------------------------------------------
// xi for the symmetric gl and osp families

namespace detail {

inline std::pair<YMonomial, YMonomial> xi_seed(const CartanMatrix& C, ParamMonomial mu) {
    int i1 = C.index_of({1, false}), i1b = C.index_of({1, true});
    if (C.family == Family::gl_sym) {
        YMonomial a = YMonomial::generator(i1, mu) *
                      YMonomial::generator(i1b, mu * ParamMonomial::s1(), -1);
        YMonomial b = YMonomial::generator(i1, mu * ParamMonomial{2, 2}) *
                      YMonomial::generator(i1b, mu * ParamMonomial{1, 2}, -1);
        return {a, b};
    }
    if (C.family == Family::osp) {
        YMonomial a = YMonomial::generator(i1, mu) *
                      YMonomial::generator(i1b, mu * ParamMonomial::s1(2), -1);
        YMonomial b = YMonomial::generator(i1, mu * ParamMonomial{2, 2}) *
                      YMonomial::generator(i1b, mu * ParamMonomial::q(2), -1);
        return {a, b};
    }
    throw unsupported_family("xi: gl_sym or osp only");
}

}  // namespace detail

// The two halves of the recursion at rank k <= C.n, shifted by mu.
inline std::pair<QQChar, QQChar> xi_parts(const CartanMatrix& C, int k, ParamMonomial mu) {
    if (k < 1 || k > C.n) throw out_of_range("xi_parts: rank out of range");
    if (k == 1) {
        auto [a, b] = detail::xi_seed(C, mu);
        return {QQChar(&C, a), QQChar(&C, b)};
    }
    auto [p1, p2] = xi_parts(C, k - 1, mu);
    auto [s1, s2] = xi_parts(C, k - 1, mu * ParamMonomial::q(2));
    int ik = C.index_of({k, false});
    YMonomial yk_lo = YMonomial::generator(ik, mu * ParamMonomial{1, k - 1});       // Y_{k, mu q^{k-1} s1}
    YMonomial yk_hi = YMonomial::generator(ik, mu * ParamMonomial{1, k + 1}, -1);   // Y_{k, mu q^{k+1} s1}^{-1}
    return {p1 + yk_lo * p2, yk_hi * s1 + s2};
}

inline QQChar xi(const CartanMatrix& C) {
    auto [a, b] = xi_parts(C, C.n, ParamMonomial::one());
    return a + b;
}

// Closed form: one monomial per nu in {0,1}^n (nu[0] = nu_1, ..., nu[n-1] = nu_n).
inline YMonomial xi_tilde(const CartanMatrix& C, const std::vector<int>& nu) {
    const int n = C.n;
    if (static_cast<int>(nu.size()) != n) throw out_of_range("xi_tilde: wrong length");
    bool is_osp = C.family == Family::osp;
    if (!is_osp && C.family != Family::gl_sym)
        throw unsupported_family("xi_tilde: gl_sym or osp only");
    int total = 0;
    for (int v : nu) total += v;
    YMonomial m;
    for (int i = 2; i <= n; ++i) {
        int e = -nu[i - 1] + nu[i - 2];
        if (e == 0) continue;
        int above = 0;
        for (int j = i + 1; j <= n; ++j) above += nu[j - 1];
        int qe = 2 * above + nu[i - 1] - nu[i - 2] + i;
        m = m * YMonomial::generator(C.index_of({i, false}), ParamMonomial{1, qe}, e);
    }
    int i1 = C.index_of({1, false}), i1b = C.index_of({1, true});
    m = m * YMonomial::generator(i1, ParamMonomial{2 * nu[0], 2 * total});
    int bar_s1 = is_osp ? 2 - 2 * nu[0] : 1;
    m = m * YMonomial::generator(i1b, ParamMonomial{bar_s1, 2 * total}, -1);
    return m;
}

inline QQChar xi_closed(const CartanMatrix& C) {
    const int n = C.n;
    QQChar out(&C);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> nu(n);
        for (int i = 0; i < n; ++i) nu[i] = (mask >> i) & 1;
        out.add_term(xi_tilde(C, nu), 1);
    }
    return out;
}

// eta: bar image of xi for the symmetric families.
inline QQChar eta(const CartanMatrix& C) {
    if (C.family == Family::gl_sym || C.family == Family::osp) return bar_map(C, xi(C));
    if (C.family == Family::gl_std)
        return QQChar(&C, YMonomial::generator(C.index_of({0, false}), ParamMonomial::one(), -1));
    throw unsupported_family("eta: builtin families only");
}

// gl_std: the rectangle character chi_{lambda^(0),1} divided by its common
// color-0 factor and re-centered at the top term Y_{0,1}.  The division must
// hold termwise; failure signals an implementation bug, not bad input.
inline QQChar xi_rect(const CartanMatrix& C) {
    if (C.family != Family::gl_std) throw unsupported_family("xi_rect: gl_std only");
    const int n = C.n, m = C.m;
    QQChar rect = chi_hook(C, HookPartition::rectangle(n, m));
    int c0 = C.index_of({0, false});
    ParamMonomial div{-1, -n - 1};  // q^{-n-1} s1^{-1}
    QQChar out(&C);
    YMonomial zero_inv = YMonomial::generator(c0, div, -1);
    for (const auto& [mono, coef] : rect.terms()) {
        if (mono.exp(c0, div) >= 0)
            throw divisibility_fails("xi_rect: term lacks the common color-0 factor");
        out.add_term((mono / zero_inv).tau(ParamMonomial{2 * m + 1, n + 1}), coef);
    }
    return out;
}

// ---------------------------------------------------------------------------
// basic qq-character verification

struct BlockRecord {
    int color = 0;
    int length = 1;
    YMonomial top;
    ParamMonomial first_shift;  // meaningful for length >= 2
};

struct ColorVerdict {
    int color = 0;
    bool basic = false;
    bool budget_exceeded = false;
    std::string detail;
    std::vector<BlockRecord> blocks;
};

struct BasicReport {
    bool basic = false;
    bool budget_exceeded = false;
    std::vector<ColorVerdict> colors;
    std::vector<YMonomial> top_monomials;
};

namespace detail {

struct BasicSearch {
    const CartanMatrix& C;
    int color;
    int max_len;
    static constexpr int max_blocks = 3;
    long long budget = 4000000;
    bool exceeded = false;

    std::vector<YMonomial> terms;
    // directed edges u -> v with the step shift
    std::map<int, std::vector<std::pair<int, ParamMonomial>>> edges;
    std::vector<BlockRecord> blocks;

    BasicSearch(const CartanMatrix& c, int col, int L) : C(c), color(col), max_len(L) {}

    bool step_shift(const YMonomial& u, const YMonomial& v, ParamMonomial& out) const {
        return affine_step(C, color, u, v, out);
    }

    // A ladder candidate: the sequence of step shifts applied below a top term.
    struct Ladder {
        std::vector<ParamMonomial> shifts;  // branch-consistent, nonempty
    };

    // all branch-consistent ladders starting at top, following graph edges
    std::vector<Ladder> ladders_from(int top) const {
        std::vector<Ladder> out;
        ParamMonomial sig = C.sigma[color];
        bool fermi = C.fermionic[color];
        std::function<void(int, std::vector<ParamMonomial>&)> rec =
            [&](int u, std::vector<ParamMonomial>& shifts) {
                if (!shifts.empty()) out.push_back({shifts});
                if (static_cast<int>(shifts.size()) + 1 >= max_len) return;
                auto it = edges.find(u);
                if (it == edges.end()) return;
                for (const auto& [v, c] : it->second) {
                    if (!shifts.empty()) {
                        ParamMonomial ratio = c / shifts.back();
                        bool ok;
                        if (fermi) ok = ratio == sig.pow(2);
                        else ok = ratio == C.sigma_p[color].pow(2) ||
                                  ratio == C.sigma_pp[color].pow(2);
                        if (shifts.size() >= 2 && ratio != shifts[1] / shifts[0]) ok = false;
                        if (!ok) continue;
                    }
                    shifts.push_back(c);
                    rec(v, shifts);
                    shifts.pop_back();
                }
            };
        std::vector<ParamMonomial> shifts;
        rec(top, shifts);
        return out;
    }

    // Validate a product of ladders rooted at top and collect its expansion.
    // Mirrors the grammar: each ladder is one elementary block, extra positive
    // slots of the top are blocks of length one, inverse slots are spectator
    // factors (fermionic only).
    bool group_ok(int top, const std::vector<const Ladder*>& group,
                  const std::set<int>& remaining, std::vector<int>& members) const {
        ParamMonomial sig = C.sigma[color];
        bool fermi = C.fermionic[color];

        std::map<ParamMonomial, int> rho;
        for (const auto& [key, e] : terms[top].exps())
            if (key.color == color) rho[key.shift] += e;

        std::set<ParamMonomial> gens;
        int total_steps = 0;
        for (const Ladder* lad : group) {
            for (ParamMonomial c : lad->shifts) {
                ++total_steps;
                ParamMonomial killed = fermi ? c * sig : c / sig;
                for (ParamMonomial g : {c * sig, c / sig}) {
                    if (gens.count(g)) return false;  // blocks not mutually generic
                    gens.insert(g);
                }
                auto it = rho.find(killed);
                if (it == rho.end() || it->second != 1) return false;
                rho.erase(it);
            }
        }
        std::vector<ParamMonomial> pos, neg;
        for (const auto& [s, e] : rho) {
            if (gens.count(s)) return false;
            (e > 0 ? pos : neg).push_back(s);
        }
        if (!fermi && !neg.empty()) return false;  // bosonic blocks have no spectator inverses
        if (fermi && total_steps == 0 && !pos.empty()) {
            for (ParamMonomial nu : neg) {
                bool homed = false;
                for (ParamMonomial mu : pos)
                    if (nu != mu / sig.pow(2) && nu != mu) { homed = true; break; }
                if (!homed) return false;
            }
        }

        // expansion: all mixed depth products must be present and distinct
        std::vector<YMonomial> expect = {terms[top]};
        for (const Ladder* lad : group) {
            std::vector<YMonomial> next;
            for (const YMonomial& base : expect) {
                YMonomial cur = base;
                next.push_back(cur);
                for (ParamMonomial c : lad->shifts) {
                    cur = cur * affine_root(C, color, c).inv();
                    next.push_back(cur);
                }
            }
            expect = std::move(next);
        }
        members.clear();
        std::set<int> taken;
        for (const YMonomial& want : expect) {
            int found = -1;
            for (int t : remaining)
                if (!taken.count(t) && terms[t] == want) { found = t; break; }
            if (found < 0) return false;
            taken.insert(found);
            members.push_back(found);
        }
        return true;
    }

    bool solve(std::set<int> remaining) {
        if (--budget < 0) { exceeded = true; return false; }
        if (remaining.empty()) return true;
        // a source (nobody's step image) must head some group; pick the first
        int start = -1;
        for (int t : remaining) {
            bool is_image = false;
            for (int u : remaining) {
                if (u == t) continue;
                auto it = edges.find(u);
                if (it == edges.end()) continue;
                for (const auto& [v, c] : it->second)
                    if (v == t) { is_image = true; break; }
                if (is_image) break;
            }
            if (!is_image) { start = t; break; }
        }
        if (start < 0) start = *remaining.begin();

        std::vector<Ladder> lads = ladders_from(start);
        // candidate groups: subsets of ladders of size 0..max_blocks, larger first
        std::vector<std::vector<const Ladder*>> groups;
        const size_t L = lads.size();
        for (size_t a = 0; a < L; ++a)
            for (size_t b = a + 1; b < L; ++b)
                for (size_t c = b + 1; c < L; ++c)
                    groups.push_back({&lads[a], &lads[b], &lads[c]});
        for (size_t a = 0; a < L; ++a)
            for (size_t b = a + 1; b < L; ++b) groups.push_back({&lads[a], &lads[b]});
        for (size_t a = 0; a < L; ++a) groups.push_back({&lads[a]});
        groups.push_back({});
        std::stable_sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) {
            size_t sx = 1, sy = 1;
            for (auto* l : x) sx *= l->shifts.size() + 1;
            for (auto* l : y) sy *= l->shifts.size() + 1;
            return sx > sy;
        });

        for (const auto& group : groups) {
            if (--budget < 0) { exceeded = true; return false; }
            std::vector<int> members;
            if (!group_ok(start, group, remaining, members)) continue;
            std::set<int> rest = remaining;
            for (int t : members) rest.erase(t);
            size_t nblocks = blocks.size();
            if (group.empty()) {
                blocks.push_back({color, 1, terms[start], ParamMonomial::one()});
            } else {
                for (const Ladder* lad : group)
                    blocks.push_back({color, static_cast<int>(lad->shifts.size()) + 1,
                                      terms[start], lad->shifts[0]});
            }
            if (solve(std::move(rest))) return true;
            blocks.resize(nblocks);
            if (exceeded) return false;
        }
        return false;
    }
};

}  // namespace detail

inline BasicReport verify_basic(const QQChar& chi, int max_block_len = 4) {
    const CartanMatrix& C = *chi.cartan();
    BasicReport report;
    report.basic = true;

    std::vector<YMonomial> terms;
    for (const auto& [m, c] : chi.terms()) {
        if (c < 0) {
            report.basic = false;
            ColorVerdict cv;
            cv.detail = "negative coefficient";
            report.colors.push_back(cv);
            return report;
        }
        if (!m.generic()) {
            report.basic = false;
            ColorVerdict cv;
            cv.detail = "non-generic term";
            report.colors.push_back(cv);
            return report;
        }
        for (long long i = 0; i < c; ++i) terms.push_back(m);
    }

    std::vector<std::set<int>> tops_per_color(C.rank());
    for (int color = 0; color < C.rank(); ++color) {
        detail::BasicSearch search(C, color, max_block_len);
        search.terms = terms;
        for (int u = 0; u < static_cast<int>(terms.size()); ++u)
            for (int v = 0; v < static_cast<int>(terms.size()); ++v) {
                if (u == v) continue;
                ParamMonomial c;
                if (search.step_shift(terms[u], terms[v], c))
                    search.edges[u].push_back({v, c});
            }

        // connected components, solved independently
        std::vector<int> comp(terms.size(), -1);
        int ncomp = 0;
        for (size_t s = 0; s < terms.size(); ++s) {
            if (comp[s] >= 0) continue;
            std::vector<int> stack = {static_cast<int>(s)};
            comp[s] = ncomp;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                auto push = [&](int v) {
                    if (comp[v] < 0) { comp[v] = ncomp; stack.push_back(v); }
                };
                auto it = search.edges.find(u);
                if (it != search.edges.end())
                    for (const auto& [v, c] : it->second) push(v);
                for (const auto& [u2, outs] : search.edges)
                    for (const auto& [v, c] : outs)
                        if (v == u) push(u2);
            }
            ++ncomp;
        }

        ColorVerdict verdict;
        verdict.color = color;
        verdict.basic = true;
        for (int cc = 0; cc < ncomp && verdict.basic; ++cc) {
            std::set<int> members;
            for (size_t t = 0; t < terms.size(); ++t)
                if (comp[t] == cc) members.insert(static_cast<int>(t));
            size_t before = search.blocks.size();
            if (!search.solve(members)) {
                verdict.basic = false;
                if (search.exceeded) {
                    verdict.budget_exceeded = true;
                    verdict.detail = "search budget exceeded";
                    report.budget_exceeded = true;
                } else {
                    verdict.detail = "no block partition for component containing term " +
                                     (*members.begin() < static_cast<int>(terms.size())
                                          ? terms[*members.begin()].str(C)
                                          : std::string());
                }
                search.blocks.resize(before);
            }
        }
        for (const auto& blk : search.blocks) {
            verdict.blocks.push_back(blk);
            for (size_t t = 0; t < terms.size(); ++t)
                if (terms[t] == blk.top) tops_per_color[color].insert(static_cast<int>(t));
        }
        if (!verdict.basic) report.basic = false;
        report.colors.push_back(std::move(verdict));
    }

    if (report.basic) {
        for (size_t t = 0; t < terms.size(); ++t) {
            bool top_everywhere = true;
            for (int color = 0; color < C.rank() && top_everywhere; ++color)
                top_everywhere = tops_per_color[color].count(static_cast<int>(t)) > 0;
            if (top_everywhere) report.top_monomials.push_back(terms[t]);
        }
    }
    return report;
}

}  // namespace qqforge

#endif
