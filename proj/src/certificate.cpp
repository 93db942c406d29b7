#include "cyclat/certificate.hpp"

#include <json.hpp>

#include <sstream>

namespace cyclat::cert {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json scalar_to_json(const AlgebraicScalar& s) {
    ordered_json j;
    j["e"] = std::to_string(s.extension_degree());
    j["D"] = to_string(s.radicand());
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
    j["coeffs"] = coeffs;
    return j;
}

AlgebraicScalar scalar_from_json(const ordered_json& j) {
    unsigned e = static_cast<unsigned>(std::stoul(j.at("e").get<std::string>()));
    Rat d = rat_from_string(j.at("D").get<std::string>());
    std::vector<Rat> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(rat_from_string(c.get<std::string>()));
    return AlgebraicScalar(e, d, std::move(coeffs));
}

ordered_json matz_to_json(const MatZ& m) {
    ordered_json rows = ordered_json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

MatZ matz_from_json(const ordered_json& j) {
    size_t r = j.size();
    if (r == 0) return MatZ();
    size_t c = j.at(0).size();
    MatZ m(r, c, Int(0));
    for (size_t i = 0; i < r; ++i)
        for (size_t k = 0; k < c; ++k)
            m(i, k) = int_from_string(j.at(i).at(k).get<std::string>());
    return m;
}

}  // namespace

std::string certificate_json(const RunConfig& cfg, const cyclo::CyclotomicField& field,
                             const ideals::SplitPrime& P, const lift::ScanReport& rep,
                             const std::vector<symplectic::SymplecticCertificate>& certs) {
    ordered_json j;
    j["schema"] = "cyclat-certificate-v1";

    ordered_json jc;
    jc["m_input"] = cfg.m_input;
    jc["m"] = to_string(cfg.m);
    jc["prime_mode"] = cfg.prime_mode;
    jc["prime_value"] = to_string(cfg.prime_value);
    jc["epsilon"] = to_string(cfg.epsilon);
    jc["symplectic"] = cfg.symplectic;
    jc["radius_sq"] = cfg.radius_sq ? ordered_json(to_string(*cfg.radius_sq)) : ordered_json(nullptr);
    jc["out_dir"] = cfg.out_dir;
    jc["ball_guard"] = std::to_string(cfg.ball_guard);
    j["config"] = jc;

    ordered_json jf;
    jf["m"] = to_string(field.m());
    jf["phi"] = std::to_string(field.phi());
    jf["basis"] = "power";
    ordered_json poly = ordered_json::array();
    for (const auto& c : field.cyclo_poly()) poly.push_back(to_string(c));
    jf["cyclo_poly"] = poly;
    jf["disc_abs"] = to_string(field.disc_abs());
    j["field"] = jf;

    ordered_json jp;
    jp["p"] = to_string(P.p);
    jp["root"] = to_string(P.root_a);
    jp["q"] = to_string(P.q);
    jp["hnf"] = matz_to_json(P.hnf_basis);
    j["prime"] = jp;

    ordered_json jb;
    jb["kind"] = rep.base_kind;
    jb["vol0_sq"] = scalar_to_json(rep.vol0_sq);
    j["base"] = jb;

    ordered_json jr;
    jr["r_sq"] = to_string(rep.r_sq);
    jr["constraint"] = rep.radius_constraint;
    jr["epsilon"] = to_string(rep.epsilon);
    j["radius"] = jr;

    j["mu_pl0_sq"] = scalar_to_json(rep.mu_pl0_sq);
    j["ball_count"] = std::to_string(rep.ball_count);

    ordered_json lines = ordered_json::array();
    for (size_t i = 0; i < rep.lines.size(); ++i) {
        const auto& lr = rep.lines[i];
        ordered_json jl;
        jl["line"] = lr.line.str();
        jl["count"] = std::to_string(lr.ball_count);
        jl["min_weight_sq"] = scalar_to_json(lr.min_weight_sq);
        jl["vol_sq"] = scalar_to_json(lr.vol_sq);
        jl["mu_sq"] = scalar_to_json(lr.mu_sq);
        jl["delta"] = lr.delta_str;
        if (rep.base_kind == "symplectic" && i < certs.size()) {
            ordered_json js;
            js["certified"] = certs[i].ok();
            js["det"] = to_string(certs[i].det);
            jl["symplectic"] = js;
        } else {
            jl["symplectic"] = nullptr;
        }
        lines.push_back(jl);
    }
    j["lines"] = lines;

    ordered_json ja;
    ja["total_nonzero"] = std::to_string(rep.total_nonzero);
    ja["partition_ok"] = rep.partition_ok;
    ja["average_ok"] = rep.average_ok;
    ja["orbit_ok"] = rep.orbit_ok;
    ja["volume_ok"] = rep.volume_ok;
    ja["minimum_ok"] = rep.minimum_ok;
    ja["density_ok"] = rep.density_ok;
    ja["target_density"] = rep.target_density_str;
    j["aggregates"] = ja;

    ordered_json jbest;
    jbest["line"] = rep.lines[rep.best_index].line.str();
    jbest["index"] = std::to_string(rep.best_index);
    jbest["basis"] = matz_to_json(rep.best_basis);
    jbest["delta"] = rep.best_delta_str;
    if (rep.base_kind == "symplectic" && rep.best_index < certs.size()) {
        const auto& c = certs[rep.best_index];
        ordered_json js;
        js["pairing"] = matz_to_json(c.pairing);
        js["det"] = to_string(c.det);
        js["vol_sq"] = scalar_to_json(AlgebraicScalar(Rat(1)));
        jbest["symplectic"] = js;
    } else {
        jbest["symplectic"] = nullptr;
    }
    jbest["empty_intersection"] = rep.empty_line_exists;
    if (rep.empty_line_exists) {
        jbest["empty_line_bound"] = rep.empty_bound_str;
        jbest["empty_line_bound_ok"] = rep.empty_bound_ok;
        jbest["svp_exceeds_r"] = rep.svp_exceeds_r_ok;
    } else {
        jbest["empty_line_bound"] = nullptr;
    }
    j["best"] = jbest;

    return j.dump(2) + "\n";
}

std::string summary_csv(const lift::ScanReport& rep) {
    std::ostringstream os;
    os << "m,p,line,count,mu_sq,vol_sq,delta,symplectic\n";
    for (const auto& lr : rep.lines) {
        os << to_string(rep.m) << "," << to_string(rep.p) << "," << lr.line.str() << ","
           << lr.ball_count << "," << lr.mu_sq.str() << "," << lr.vol_sq.str() << ","
           << lr.delta_str << "," << (rep.base_kind == "symplectic" ? "true" : "false") << "\n";
    }
    return os.str();
}

void verify_certificate(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("certificate parse error: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != "cyclat-certificate-v1")
            throw ConfigError("unknown certificate schema");
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("certificate schema error: ") + e.what());
    }

    Int m, p, root;
    std::string kind;
    Rat r_sq, epsilon;
    try {
        m = int_from_string(j.at("field").at("m").get<std::string>());
        p = int_from_string(j.at("prime").at("p").get<std::string>());
        root = int_from_string(j.at("prime").at("root").get<std::string>());
        kind = j.at("base").at("kind").get<std::string>();
        r_sq = rat_from_string(j.at("radius").at("r_sq").get<std::string>());
        epsilon = rat_from_string(j.at("radius").at("epsilon").get<std::string>());
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("certificate field missing: ") + e.what());
    }

    // Re-derive the field and the split prime.
    cyclo::CyclotomicField field(m);
    if (to_string(field.disc_abs()) != j.at("field").at("disc_abs").get<std::string>())
        throw FalsificationError("verify: disc_abs mismatch, recomputed " +
                                 to_string(field.disc_abs()));
    ideals::SplitPrime P = ideals::find_split_prime(field, p);
    if (P.p != p)
        throw FalsificationError("verify: p = " + to_string(p) + " is not the split prime found (" +
                                 to_string(P.p) + ")");
    if (P.root_a != root)
        throw FalsificationError("verify: root mismatch, recomputed " + to_string(P.root_a));
    if (!(matz_from_json(j.at("prime").at("hnf")) == P.hnf_basis))
        throw FalsificationError("verify: prime ideal HNF mismatch");

    // Rebuild the base.
    std::optional<symplectic::SymplecticBase> symp;
    std::optional<lift::BasePair> plain;
    const lift::BasePair* base = nullptr;
    if (kind == "symplectic") {
        symp = symplectic::build_symplectic_base(field, P);
        base = &symp->pair;
    } else if (kind == "orthogonal") {
        plain = lift::make_plain_base(field, P);
        base = &*plain;
    } else {
        throw ConfigError("verify: unknown base kind " + kind);
    }

    if (!(base->lambda0_volume_sq() == scalar_from_json(j.at("base").at("vol0_sq"))))
        throw FalsificationError("verify: Vol(Lambda_0)^2 mismatch");

    // Radius admissibility against a fresh SVP of P Lambda_0.
    lattice::SvpResult mu_p = lattice::shortest_vector(base->p_lambda0());
    if (!(mu_p.norm_sq == scalar_from_json(j.at("mu_pl0_sq"))))
        throw FalsificationError("verify: mu^2(P Lambda_0) mismatch, fresh SVP gives " +
                                 mu_p.norm_sq.str());
    if (AlgebraicScalar(r_sq * 4).compare(mu_p.norm_sq) >= 0)
        throw FalsificationError("verify: stored radius violates r_sq < mu^2/4");

    // Per-line exact claims.
    auto ls = lift::lines(P);
    const auto& jlines = j.at("lines");
    if (jlines.size() != ls.size())
        throw FalsificationError("verify: expected " + std::to_string(ls.size()) + " lines");
    Int total(0);
    Int ball_count = int_from_string(j.at("ball_count").get<std::string>());
    AlgebraicScalar vol_expected = base->lambda0_volume_sq() * Rat(p * p);
    for (size_t i = 0; i < ls.size(); ++i) {
        const auto& jl = jlines.at(i);
        if (jl.at("line").get<std::string>() != ls[i].str())
            throw FalsificationError("verify: line order mismatch at index " + std::to_string(i));
        lattice::LatticeInstance lc = lift_line(*base, ls[i]);
        AlgebraicScalar vol = lc.volume_sq();
        if (!(vol == scalar_from_json(jl.at("vol_sq"))) || !(vol == vol_expected))
            throw FalsificationError("verify: vol_sq mismatch on line " + ls[i].str() +
                                     ", recomputed " + vol.str());
        lattice::SvpResult svp = lattice::shortest_vector(lc);
        if (!(svp.norm_sq == scalar_from_json(jl.at("mu_sq"))))
            throw FalsificationError("verify: mu_sq mismatch on line " + ls[i].str() +
                                     ", fresh SVP gives " + svp.norm_sq.str());
        // minimum formula with the stored weight
        AlgebraicScalar d_sq = scalar_from_json(jl.at("min_weight_sq"));
        AlgebraicScalar expected = (d_sq.compare(mu_p.norm_sq) <= 0) ? d_sq : mu_p.norm_sq;
        if (!(svp.norm_sq == expected))
            throw FalsificationError("verify: minimum formula fails on line " + ls[i].str());
        total += int_from_string(jl.at("count").get<std::string>());
        if (int_from_string(jl.at("count").get<std::string>()) % m != 0)
            throw FalsificationError("verify: orbit divisibility fails on line " + ls[i].str());
        if (kind == "symplectic") {
            symplectic::SymplecticCertificate c = symplectic::verify_symplectic(*symp, lc);
            if (!c.ok())
                throw FalsificationError("verify: symplectic certification failed on line " +
                                         ls[i].str() + ": " + c.witness);
            if (jl.at("symplectic").is_null() || !jl.at("symplectic").at("certified").get<bool>())
                throw FalsificationError("verify: symplectic flag missing on line " + ls[i].str());
        }
    }
    // Aggregates: partition and strict average, from the stored counts.
    if (total != ball_count - 1)
        throw FalsificationError("verify: partition identity fails: sum counts = " +
                                 to_string(total) + ", |ball| - 1 = " + to_string(Int(ball_count - 1)));
    if (!(p * total < (p + 1) * ball_count))
        throw FalsificationError("verify: strict average bound fails");

    // Best basis up to HNF canonicalization.
    size_t best_index = std::stoul(j.at("best").at("index").get<std::string>());
    if (best_index >= ls.size()) throw ConfigError("verify: best index out of range");
    MatZ stored = matz_from_json(j.at("best").at("basis"));
    lattice::LatticeInstance best = lift_line(*base, ls[best_index]);
    if (!(hnf(stored) == hnf(best.coord_num())))
        throw FalsificationError("verify: best basis spans a different lattice");
    if (kind == "symplectic") {
        const auto& js = j.at("best").at("symplectic");
        if (js.is_null()) throw ConfigError("verify: symplectic section missing on best line");
        symplectic::SymplecticCertificate fresh = symplectic::verify_symplectic(*symp, best);
        if (!(matz_from_json(js.at("pairing")) == fresh.pairing))
            throw FalsificationError("verify: stored pairing matrix differs from recomputation");
        if (int_from_string(js.at("det").get<std::string>()) != fresh.det)
            throw FalsificationError("verify: stored pairing determinant differs");
    }
    if (j.at("best").at("empty_intersection").get<bool>()) {
        lattice::SvpResult svp = lattice::shortest_vector(best);
        if (!(AlgebraicScalar(r_sq).compare(svp.norm_sq) < 0))
            throw FalsificationError("verify: empty-ball claim fails, mu^2(best) = " +
                                     svp.norm_sq.str() + " <= r^2");
    }
}

}  // namespace cyclat::cert
