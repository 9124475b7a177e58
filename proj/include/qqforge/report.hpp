#ifndef QQFORGE_REPORT_HPP
#define QQFORGE_REPORT_HPP

#include <json.hpp>

#include "qqforge/relations.hpp"

namespace qqforge {

using nlohmann::json;

// Exact coefficients encode as a JSON integer when they fit, otherwise as a
// decimal string (rationals always as "p/q" strings).
inline json coeff_json(const BigRat& c) {
    if (c.is_integer()) {
        try {
            return json(c.num().to_ll());
        } catch (const std::overflow_error&) {
            return json(c.num().str());
        }
    }
    return json(c.str());
}

inline json to_json(const ParamLaurent& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back({m.a, m.b, coeff_json(c)});
    return terms;
}

inline json to_json(const ParamRational& r) {
    if (r.is_laurent()) return {{"num", to_json(r.num())}};
    return {{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

inline json to_json(const GammaPoly& g) {
    json coeffs = json::array();
    for (int i = 0; i <= g.degree(); ++i) coeffs.push_back(coeff_json(g.coeff(i)));
    return coeffs;
}

inline json to_json(const CartanMatrix& C) {
    json j;
    j["family"] = family_name(C.family);
    j["n"] = C.n;
    if (C.family == Family::gl_std) j["m"] = C.m;
    json labels = json::array(), parity = json::array(), entries = json::array(),
         d = json::array();
    for (int i = 0; i < C.rank(); ++i) {
        labels.push_back(C.labels[i].str());
        parity.push_back(C.fermionic[i] ? "fermionic" : "bosonic");
        d.push_back(to_json(C.d[i]));
        json row = json::array();
        for (int k = 0; k < C.rank(); ++k) row.push_back(to_json(C.c[i][k]));
        entries.push_back(row);
    }
    j["labels"] = labels;
    j["parity"] = parity;
    j["entries"] = entries;
    j["d"] = d;
    return j;
}

inline json validation_json(const ValidationReport& rep) {
    json out = json::array();
    for (const auto& it : rep.items) {
        json j{{"axiom", it.axiom}, {"pass", it.pass}};
        if (!it.detail.empty()) j["detail"] = it.detail;
        out.push_back(j);
    }
    return out;
}

inline json to_json(const CartanMatrix& C, const YMonomial& m) {
    json factors = json::array();
    for (const auto& [k, e] : m.exps())
        factors.push_back({{"color", C.labels[k.color].str()},
                           {"shift", {k.shift.a, k.shift.b}},
                           {"exp", e}});
    return factors;
}

inline json to_json(const QQChar& chi) {
    const CartanMatrix& C = *chi.cartan();
    json terms = json::array();
    for (const auto& [m, c] : chi.terms())
        terms.push_back({{"coeff", c}, {"factors", to_json(C, m)}});
    return terms;
}

inline json to_json(const Bosonization& V) {
    const CartanMatrix& C = *V.cartan;
    json terms = json::array();
    for (const auto& [m, c] : V.coeff)
        terms.push_back({{"coeff", to_json(c)}, {"factors", to_json(C, m)}});
    return terms;
}

inline json to_json(const CartanMatrix& C, const CurrentWord& w) {
    json bases = json::array();
    for (const auto& [k, e] : w.bases)
        bases.push_back({{"symbol", base_name(k.first)}, {"shift", {k.second.a, k.second.b}},
                         {"exp", e}});
    return {{"bases", bases}, {"y", to_json(C, w.ycontent)}};
}

inline json to_json(const CartanMatrix& C, const CurrentSum& s) {
    json terms = json::array();
    for (const auto& [c, w] : s.terms) {
        json t = to_json(C, w);
        t["coeff"] = to_json(c);
        terms.push_back(t);
    }
    return terms;
}

inline json to_json(const BasicReport& rep, const CartanMatrix& C) {
    json j;
    j["basic"] = rep.basic;
    j["budget_exceeded"] = rep.budget_exceeded;
    json colors = json::array();
    for (const auto& cv : rep.colors) {
        json c{{"color", C.labels[cv.color].str()}, {"basic", cv.basic}};
        if (!cv.detail.empty()) c["detail"] = cv.detail;
        json blocks = json::array();
        for (const auto& b : cv.blocks)
            blocks.push_back({{"length", b.length}, {"top", to_json(C, b.top)}});
        c["blocks"] = blocks;
        colors.push_back(c);
    }
    j["colors"] = colors;
    json tops = json::array();
    for (const auto& t : rep.top_monomials) tops.push_back(to_json(C, t));
    j["top_monomials"] = tops;
    return j;
}

inline json to_json(const RelationReport& rep) {
    json j;
    j["relation"] = rep.relation;
    j["family"] = family_name(rep.family);
    j["n"] = rep.n;
    j["pass"] = rep.pass;
    if (rep.experimental) j["experimental"] = true;
    j["word_groups"] = rep.word_groups;
    // elapsed time stays out of the JSON so identical inputs serialize identically
    json loci = json::array();
    for (const auto& lc : rep.loci) {
        json l{{"locus", {lc.locus.a, lc.locus.b}},
               {"expected", lc.expected},
               {"present", lc.present},
               {"matched", lc.matched}};
        if (!lc.detail.empty()) l["detail"] = lc.detail;
        loci.push_back(l);
    }
    j["loci"] = loci;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

}  // namespace qqforge

#endif
