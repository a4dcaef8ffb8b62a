#include "toric/json_io.hpp"

namespace toric::io {

using namespace toric::dichotomy;
using padic::Elem;
using padic::Field;

json int_to_json(const Int& x) { return x.str(); }

Int json_to_int(const json& j, const char* what) {
    try {
        if (j.is_string()) return Int(j.get<std::string>());
        if (j.is_number_integer()) return Int(j.get<long long>());
    } catch (...) {
    }
    throw err("SchemaError", std::string(what) + ": expected an integer (decimal string)");
}

json rot_to_json(const Rot& r) { return r.str(); }

Rot json_to_rot(const json& j, const char* what) {
    if (!j.is_string()) throw err("SchemaError", std::string(what) + ": rotation must be \"a/b\"");
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rot(Int(s), 1);
    return Rot(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

json field_to_json(const Field& f) {
    json eis = json::array();
    for (const auto& coef : f.eis_poly()) {
        json cv = json::array();
        for (const Int& c : coef) cv.push_back(c.str());
        eis.push_back(cv);
    }
    return json{{"p", f.p().str()}, {"f", f.f()}, {"eisenstein", eis}, {"precision", f.prec()}};
}

padic::FieldPtr json_to_field(const json& j) {
    Int p = json_to_int(j.at("p"), "field.p");
    int f = j.at("f").get<int>();
    int prec = j.at("precision").get<int>();
    if (!j.contains("eisenstein")) throw err("SchemaError", "field.eisenstein missing");
    std::vector<std::vector<Int>> eis;
    for (const auto& coef : j.at("eisenstein")) {
        std::vector<Int> cv;
        if (coef.is_array()) {
            for (const auto& c : coef) cv.push_back(json_to_int(c, "field.eisenstein"));
        } else {
            cv.push_back(json_to_int(coef, "field.eisenstein"));
        }
        cv.resize(static_cast<std::size_t>(f), Int(0));
        eis.push_back(std::move(cv));
    }
    return std::make_shared<Field>(p, f, std::move(eis), prec);
}

json elem_to_json(const Field& f, const Elem& x) {
    json cv = json::array();
    for (const Int& c : x.c) cv.push_back(c.str());
    return json{{"coeffs", cv}, {"pi_shift", x.shift}};
}

Elem json_to_elem(const Field& f, const json& j, const char* what) {
    if (!j.contains("coeffs")) throw err("SchemaError", std::string(what) + ".coeffs missing");
    std::vector<Int> cv;
    for (const auto& c : j.at("coeffs")) cv.push_back(json_to_int(c, what));
    cv.resize(static_cast<std::size_t>(f.degree()), Int(0));
    Elem x = f.from_coeffs(cv);
    if (j.contains("pi_shift")) {
        long s = j.at("pi_shift").get<long>();
        if (s != 0) x = f.shift_pi(x, s);
    }
    return x;
}

json sign_vector_to_json(const etale::SignVector& sv) {
    json signs = json::array(), mask = json::array();
    for (int s : sv.signs) signs.push_back(s);
    for (bool b : sv.split_mask) mask.push_back(b);
    return json{{"signs", signs}, {"split", mask}};
}

json hermitian_class_to_json(const etale::HermitianClass& h) {
    switch (h.kind) {
        case etale::HermitianClass::Kind::NonArchField:
            return json{{"n", h.n}, {"disc_sign", h.disc_sign}};
        case etale::HermitianClass::Kind::SplitK:
            return json{{"n", h.n}};
        default:
            return json{{"n", h.n}, {"signature", {h.r, h.s}}};
    }
}

namespace {

json compchar_to_json(const dichotomy::LocalSetting& s, std::size_t j,
                      const dichotomy::CompChar& c) {
    if (s.Ls[j].split) return json{{"split", true}, {"character", mulchar_to_json(*c.spl)}};
    return json{{"split", false}, {"character", mulchar_to_json(*c.fld)}};
}

json konechar_to_json(const dichotomy::LocalSetting& s, const dichotomy::KOneChar& b) {
    if (s.k_field()) return mulchar_to_json(*b.fld);
    return mulchar_to_json(*b.spl);
}

json splitchar_to_json(const dichotomy::LocalSetting& s, const dichotomy::SplitChar& c) {
    if (s.k_field()) return mulchar_to_json(*c.fld);
    return json{{"first", mulchar_to_json(c.spl->first)},
                {"second", mulchar_to_json(c.spl->second)}};
}

}  // namespace

json instance_to_json(const corpus::Instance& inst, bool good_beta,
                      const etale::LambdaVector* lambda) {
    const auto& s = *inst.setting;
    json comps = json::array();
    for (const auto& fj : s.E.comps) comps.push_back(field_to_json(*fj));
    json alphas = json::array();
    for (std::size_t j = 0; j < inst.alpha.size(); ++j)
        alphas.push_back(compchar_to_json(s, j, inst.alpha[j]));
    json out{{"p", s.F->p().str()},
             {"precision", s.F->prec()},
             {"k0", s.k0},
             {"components", comps},
             {"d", elem_to_json(*s.F, s.K.d_given)},
             {"psi_gamma", elem_to_json(*s.F, s.psi.gamma)},
             {"delta_t", elem_to_json(*s.F, s.delta_t)},
             {"mu", splitchar_to_json(s, inst.chi_w)},
             {"chi_v", splitchar_to_json(s, inst.chi_v)},
             {"alpha", alphas},
             {"beta", konechar_to_json(s, good_beta ? inst.beta_good : inst.beta_bad)},
             {"tag", inst.tag}};
    if (lambda) {
        json lv = json::array();
        for (std::size_t j = 0; j < lambda->comps.size(); ++j)
            lv.push_back(elem_to_json(*s.E.comps[j], lambda->comps[j]));
        out["lambda"] = lv;
    }
    return out;
}

LocalInstanceJson json_to_instance(const json& j) {
    for (const auto& key : {"p", "k0", "components", "d", "psi_gamma", "delta_t", "mu", "alpha",
                            "beta"})
        if (!j.contains(key)) throw err("SchemaError", std::string("missing field: ") + key);
    Int p = json_to_int(j.at("p"), "p");
    int k0 = j.at("k0").get<int>();
    int prec = j.contains("precision") ? j.at("precision").get<int>() : 8 * k0 + 8;
    auto f = Field::make_qp(p, prec);
    std::vector<padic::FieldPtr> comps;
    for (const auto& cj : j.at("components")) {
        json cj2 = cj;
        cj2["p"] = p.str();
        if (!cj2.contains("precision")) cj2["precision"] = prec;
        comps.push_back(json_to_field(cj2));
    }
    auto e = etale::make_etale(f, comps);
    Elem d = json_to_elem(*f, j.at("d"), "d");
    Elem gamma = json_to_elem(*f, j.at("psi_gamma"), "psi_gamma");
    Elem t = json_to_elem(*f, j.at("delta_t"), "delta_t");
    LocalInstanceJson out;
    out.setting = std::make_shared<LocalSetting>(make_setting(f, std::move(e), d, k0, gamma, t));
    const auto& s = *out.setting;
    // characters
    auto parse_split_char = [&](const json& cj, const char* what) {
        SplitChar c;
        if (s.k_field()) {
            c.fld = json_to_mulchar<quadext::QuadField>(s.gK, cj, what);
        } else {
            c.spl = std::make_pair(
                json_to_mulchar<Field>(s.gF, cj.at("first"), what),
                json_to_mulchar<Field>(s.gF, cj.at("second"), what));
        }
        return c;
    };
    out.chi_w = parse_split_char(j.at("mu"), "mu");
    out.chi_v = j.contains("chi_v") ? parse_split_char(j.at("chi_v"), "chi_v")
                                    : split_char_power(s, out.chi_w, s.E.degree);
    const json& alphas = j.at("alpha");
    if (alphas.size() != s.E.comps.size())
        throw err("SchemaError", "alpha: wrong number of components");
    for (std::size_t c = 0; c < alphas.size(); ++c) {
        CompChar cc;
        const json& aj = alphas[c].contains("character") ? alphas[c].at("character") : alphas[c];
        if (s.Ls[c].split)
            cc.spl = json_to_mulchar<Field>(s.gFj[c], aj, "alpha");
        else
            cc.fld = json_to_mulchar<quadext::QuadField>(s.gLj[c], aj, "alpha");
        out.alpha.push_back(std::move(cc));
    }
    if (s.k_field())
        out.beta.fld = json_to_mulchar<quadext::QuadField>(s.gK, j.at("beta"), "beta");
    else
        out.beta.spl = json_to_mulchar<Field>(s.gF, j.at("beta"), "beta");
    if (j.contains("lambda")) {
        etale::LambdaVector lv;
        const json& lj = j.at("lambda");
        if (lj.size() != s.E.comps.size())
            throw err("SchemaError", "lambda: wrong number of components");
        for (std::size_t c = 0; c < lj.size(); ++c)
            lv.comps.push_back(json_to_elem(*s.E.comps[c], lj[c], "lambda"));
        out.lambda = std::move(lv);
    }
    return out;
}

json sum_check_to_json(const dichotomy::LocalSetting& s, const dichotomy::SumCheckResult& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        json lv = json::array();
        for (std::size_t j = 0; j < row.lambda.comps.size(); ++j)
            lv.push_back(elem_to_json(*s.E.comps[j], row.lambda.comps[j]));
        rows.push_back(json{{"V_class", hermitian_class_to_json(row.v)},
                            {"lambda_class", lv},
                            {"omega", sign_vector_to_json(row.omega)},
                            {"epsilon", sign_vector_to_json(row.epsilon)},
                            {"dim", row.dim}});
    }
    json out{{"total", r.total}, {"breakdown", rows}};
    if (r.support) out["support"] = rows[*r.support];
    return out;
}

json dichotomy_result_to_json(const dichotomy::DichotomyResult& r) {
    return json{{"hom_dimension", r.hom_dimension},
                {"compatible", r.compatible},
                {"omega", sign_vector_to_json(r.omega)},
                {"epsilon", sign_vector_to_json(r.epsilon)}};
}

globalq::GlobalSetup json_to_global_setup(const json& j) {
    using namespace toric::globalq;
    for (const auto& key : {"d", "n", "mu", "alpha", "beta", "delta_t"})
        if (!j.contains(key)) throw err("SchemaError", std::string("missing field: ") + key);
    GlobalSetup s;
    long d = j.at("d").get<long>();
    s.k = std::make_shared<ImagQuad>(d);
    s.n = j.at("n").get<int>();
    auto parse_char = [&](const json& cj, const char* what) {
        if (!cj.contains("modulus") || !cj.contains("generators") || !cj.contains("arch_w"))
            throw err("SchemaError", std::string(what) + ": need modulus, generators, arch_w");
        KElem mod{json_to_int(cj.at("modulus").at("a"), what),
                  json_to_int(cj.at("modulus").at("b"), what)};
        std::vector<std::pair<KElem, Rot>> gens;
        for (const auto& g : cj.at("generators")) {
            KElem el{json_to_int(g.at("element").at("a"), what),
                     json_to_int(g.at("element").at("b"), what)};
            gens.push_back({el, json_to_rot(g.at("rotation"), what)});
        }
        long w = cj.at("arch_w").get<long>();
        return std::make_shared<HeckeChar>(s.k, mod, gens, w);
    };
    s.mu = parse_char(j.at("mu"), "mu");
    for (const auto& aj : j.at("alpha")) s.alpha.push_back(parse_char(aj, "alpha"));
    if (static_cast<int>(s.alpha.size()) != s.n)
        throw err("SchemaError", "alpha: wrong number of components");
    s.beta = parse_char(j.at("beta"), "beta");
    {
        const json& dt = j.at("delta_t");
        if (dt.is_string()) {
            std::string ds = dt.get<std::string>();
            auto slash = ds.find('/');
            s.delta_t = slash == std::string::npos
                            ? Rat{Int(ds), 1}
                            : Rat{Int(ds.substr(0, slash)), Int(ds.substr(slash + 1))};
        } else {
            s.delta_t = Rat{Int(dt.get<long long>()), 1};
        }
    }
    return s;
}

json place_report_to_json(const globalq::PlaceReport& r) {
    const char* kinds[] = {"split", "inert", "ramified", "complex"};
    json om = json::array(), ep = json::array();
    for (int o : r.omega) om.push_back(o);
    for (int e : r.epsilon) ep.push_back(e);
    return json{{"place", r.v == globalq::kInfinity ? json("infinity") : json(r.v.str())},
                {"decomposition", kinds[static_cast<int>(r.kind)]},
                {"omega", om},
                {"epsilon", ep},
                {"satisfied", r.satisfied}};
}

json decision_to_json(const globalq::DecisionReport& r) {
    json places = json::array();
    for (const auto& pr : r.places) places.push_back(place_report_to_json(pr));
    json out{{"conditions",
              {{"character_compatibility", r.compat},
               {"root_numbers", r.places_ok},
               {"central_value_nonzero", r.lvalue_ok}}},
             {"places", places},
             {"verdict", r.verdict}};
    if (r.l_value) out["l_value"] = {r.l_value->real(), r.l_value->imag()};
    return out;
}

}  // namespace toric::io
