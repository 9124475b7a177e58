// qqforge: exact constructors and verifiers for deformed Cartan matrices,
// qq-characters, bosonizations and the extended-algebra relations.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "qqforge/report.hpp"

using namespace qqforge;

namespace {

CartanMatrix make_family(const std::string& family, int n, int m) {
    if (family == "gl-sym") return gl_sym(n);
    if (family == "osp") return osp(n);
    if (family == "gl-std") return gl_std(n, m);
    throw unsupported_family("unknown family: " + family);
}

void print_matrix(const CartanMatrix& C) {
    std::printf("family %s, rank %d, colors:", family_name(C.family).c_str(), C.rank());
    for (int i = 0; i < C.rank(); ++i)
        std::printf(" %s%s", C.labels[i].str().c_str(), C.fermionic[i] ? "(f)" : "");
    std::printf("\n");
    for (int i = 0; i < C.rank(); ++i) {
        for (int j = 0; j < C.rank(); ++j)
            std::printf("%s%s", j ? " | " : "  ", C.c[i][j].str().c_str());
        std::printf("\n");
    }
}

struct CharRequest {
    std::string kind = "vector";
    int column_k = 0;
    std::vector<int> hook;
};

CharRequest parse_kind(const std::string& kind) {
    CharRequest r;
    if (kind.rfind("column:", 0) == 0) {
        r.kind = "column";
        r.column_k = std::atoi(kind.c_str() + 7);
    } else if (kind.rfind("hook:", 0) == 0) {
        r.kind = "hook";
        std::string rest = kind.substr(5);
        size_t pos = 0;
        while (pos < rest.size()) {
            size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            r.hook.push_back(std::atoi(rest.substr(pos, comma - pos).c_str()));
            pos = comma + 1;
        }
    } else {
        r.kind = kind;
    }
    return r;
}

QQChar build_char(const CartanMatrix& C, const CharRequest& req) {
    if (req.kind == "vector") return chi_vector(C);
    if (req.kind == "column") return chi_column(C, req.column_k);
    if (req.kind == "hook") return chi_hook(C, HookPartition{req.hook});
    if (req.kind == "xi") return C.family == Family::gl_std ? xi_rect(C) : xi(C);
    if (req.kind == "eta") return eta(C);
    throw error("unknown character kind: " + req.kind);
}

int run_verify(const CartanMatrix& C, const std::string& rel, bool as_json) {
    RelationReport rep;
    if (rel == "ee") rep = check_EE(C);
    else if (rel == "ff") rep = check_FF(C);
    else if (rel == "ef") rep = check_EF(C);
    else if (rel == "te") rep = check_TE(C);
    else if (rel == "tf") rep = check_TF(C);
    else if (rel == "ef-osp-exp") rep = check_EF_osp_experimental(C);
    else throw error("unknown relation: " + rel);
    if (as_json) {
        std::cout << to_json(rep).dump(2) << "\n";
    } else {
        std::printf("%s (%.3fs, %zu word groups)\n", rep.summary().c_str(), rep.seconds,
                    rep.word_groups);
        for (const auto& lc : rep.loci) {
            std::string tail = lc.detail.empty() ? "" : " -- " + lc.detail;
            std::printf("  locus z = %s w: %s%s%s\n", lc.locus.str().c_str(),
                        lc.expected ? "expected" : "extra",
                        lc.matched ? ", matched" : (lc.present ? ", mismatch" : ", absent"),
                        tail.c_str());
        }
        for (const auto& s : rep.notes) std::printf("  note: %s\n", s.c_str());
    }
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact deformed W-algebra toolkit"};
    app.require_subcommand(1);

    std::string family = "gl-sym";
    int n = 1, m = 1;
    bool as_json = false;

    auto add_family_opts = [&](CLI::App* cmd) {
        cmd->add_option("--family", family, "gl-sym, osp or gl-std")->required();
        cmd->add_option("--n", n, "rank parameter")->required();
        cmd->add_option("--m", m, "second rank parameter (gl-std)");
        cmd->add_flag("--json", as_json, "machine-readable output");
    };

    auto* cartan_cmd = app.add_subcommand("cartan", "build and validate a Cartan matrix");
    add_family_opts(cartan_cmd);

    auto* char_cmd = app.add_subcommand("char", "construct a qq-character");
    add_family_opts(char_cmd);
    std::string kind = "vector";
    bool do_verify = false;
    char_cmd->add_option("--kind", kind, "vector | column:K | hook:parts | xi | eta");
    char_cmd->add_flag("--verify", do_verify, "run the basic-character verifier");

    auto* bos_cmd = app.add_subcommand("bosonize", "solve screening coefficients");
    add_family_opts(bos_cmd);
    std::string bkind = "vector";
    bool check_dual = false;
    bos_cmd->add_option("--kind", bkind, "vector | column:K | xi");
    bos_cmd->add_flag("--check-dual", check_dual, "also run the dual screening check");

    auto* verify_cmd = app.add_subcommand("verify", "check an extended-algebra relation");
    add_family_opts(verify_cmd);
    std::string rel = "ee";
    verify_cmd->add_option("--rel", rel, "ee | ff | ef | te | tf | ef-osp-exp")->required();

    auto* all_cmd = app.add_subcommand("verify-all", "run the full relation sweep");
    int max_n = 3;
    all_cmd->add_option("--max-n", max_n, "largest rank to sweep");
    all_cmd->add_flag("--json", as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cartan_cmd->parsed()) {
            CartanMatrix C = make_family(family, n, m);
            auto rep = C.validate();
            if (as_json) {
                json j = to_json(C);
                j["validation"] = validation_json(rep);
                json K = json::array();
                for (const auto& row : C.k_matrix()) {
                    json r = json::array();
                    for (const auto& e : row) r.push_back(to_json(e));
                    K.push_back(r);
                }
                j["k_matrix"] = K;
                j["det_k"] = to_json(C.det_k());
                std::cout << j.dump(2) << "\n";
            } else {
                print_matrix(C);
                for (const auto& it : rep.items) {
                    std::string tail = it.detail.empty() ? "" : " -- " + it.detail;
                    std::printf("  axiom %-24s %s%s\n", it.axiom.c_str(),
                                it.pass ? "pass" : "FAIL", tail.c_str());
                }
                std::printf("  det K = %s\n", C.det_k().str().c_str());
            }
            return rep.all_pass() ? 0 : 1;
        }

        if (char_cmd->parsed()) {
            CartanMatrix C = make_family(family, n, m);
            QQChar chi = build_char(C, parse_kind(kind));
            BasicReport basic;
            if (do_verify) basic = verify_basic(chi);
            if (as_json) {
                json j{{"family", family_name(C.family)}, {"kind", kind},
                       {"terms", to_json(chi)}, {"count", chi.size()}};
                if (do_verify) j["basic"] = to_json(basic, C);
                std::cout << j.dump(2) << "\n";
            } else {
                std::printf("%zu terms\n%s\n", chi.size(), chi.str().c_str());
                if (do_verify)
                    std::printf("basic: %s\n", basic.basic ? "yes" : "NO");
            }
            return do_verify && !basic.basic ? 1 : 0;
        }

        if (bos_cmd->parsed()) {
            CartanMatrix C = make_family(family, n, m);
            CharRequest req = parse_kind(bkind);
            QQChar chi = build_char(C, req);
            // anchor at the canonical top with the family normalization
            YMonomial top;
            ParamRational top_coeff(1);
            if (req.kind == "vector") {
                Letter L = alphabet(C).front();
                top = letter_monomial(C, L);
                top_coeff = vchi1_coeff(C, L);
            } else if (req.kind == "column") {
                auto alpha = alphabet(C);
                for (int s = 0; s < req.column_k; ++s) {
                    top = top *
                          letter_monomial(C, alpha[s]).tau(ParamMonomial::q(req.column_k - 1 - 2 * s));
                    top_coeff = top_coeff * vchi1_coeff(C, alpha[s]);
                }
            } else if (req.kind == "xi" && C.family != Family::gl_std) {
                std::vector<int> zeros(C.n, 0);
                top = xi_tilde(C, zeros);
                top_coeff = xi_coeff(C, zeros);
            } else {
                top = YMonomial::generator(C.index_of({0, false}), ParamMonomial::one());
            }
            Bosonization V = bosonize(chi, top, top_coeff);
            bool dual_ok = true;
            if (check_dual) {
                for (int i = 0; i < C.rank(); ++i)
                    if (!C.fermionic[i]) dual_ok = dual_ok && dual_screening_check(V, i);
            }
            if (as_json) {
                json j{{"family", family_name(C.family)}, {"kind", bkind},
                       {"terms", to_json(V)}};
                if (check_dual) j["dual_screening"] = dual_ok;
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& [mono, c] : V.coeff)
                    std::printf("%s  *  %s\n", c.str().c_str(), mono.str(C).c_str());
                if (check_dual) std::printf("dual screening: %s\n", dual_ok ? "pass" : "FAIL");
            }
            return dual_ok ? 0 : 1;
        }

        if (verify_cmd->parsed()) {
            CartanMatrix C = make_family(family, n, m);
            return run_verify(C, rel, as_json);
        }

        if (all_cmd->parsed()) {
            int failures = 0;
            json all = json::array();
            auto run = [&](const CartanMatrix& C, const std::string& r) {
                RelationReport rep;
                if (r == "ee") rep = check_EE(C);
                else if (r == "ff") rep = check_FF(C);
                else if (r == "ef") rep = check_EF(C);
                else if (r == "te") rep = check_TE(C);
                else if (r == "tf") rep = check_TF(C);
                else rep = check_EF_osp_experimental(C);
                if (as_json) all.push_back(to_json(rep));
                else std::printf("%s (%.3fs)\n", rep.summary().c_str(), rep.seconds);
                if (!rep.pass && !rep.experimental) ++failures;
            };
            for (int k = 1; k <= max_n; ++k) {
                CartanMatrix C = gl_sym(k);
                run(C, "ee");
                run(C, "ff");
                run(C, "te");
                run(C, "tf");
                if (k <= 2) run(C, "ef");
            }
            for (int k = 2; k <= max_n; ++k) {
                CartanMatrix C = osp(k);
                run(C, "ee");
                run(C, "ff");
                run(C, "te");
                run(C, "tf");
                if (k <= 2) run(C, "ef-osp-exp");
            }
            if (as_json) std::cout << all.dump(2) << "\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
