#pragma once

#include <nlohmann/json.hpp>

#include "toric/corpus.hpp"
#include "toric/globalq.hpp"

namespace toric::io {

using json = nlohmann::ordered_json;

// ----- primitives (integers travel as decimal strings) -----
json int_to_json(const Int& x);
Int json_to_int(const json& j, const char* what);
json rot_to_json(const Rot& r);
Rot json_to_rot(const json& j, const char* what);

// ----- p-adic fields and elements -----
json field_to_json(const padic::Field& f);
padic::FieldPtr json_to_field(const json& j);
json elem_to_json(const padic::Field& f, const padic::Elem& x);
padic::Elem json_to_elem(const padic::Field& f, const json& j, const char* what);

// ----- characters (rotation tables on the presentation generators) -----
template <class F>
json mulchar_to_json(const MulChar<F>& c) {
    json imgs = json::array();
    imgs.push_back({{"generator", "pi"}, {"rotation", c.pi_rot.str()}});
    imgs.push_back({{"generator", "zeta"}, {"rotation", c.zeta_rot.str()}});
    for (std::size_t i = 0; i < c.basis_rots.size(); ++i)
        imgs.push_back({{"generator", "u" + std::to_string(i + 1)},
                        {"rotation", c.basis_rots[i].str()}});
    return json{{"level", c.grp->level()}, {"images", imgs}};
}

template <class F>
MulChar<F> json_to_mulchar(std::shared_ptr<const UnitGroup<F>> grp, const json& j,
                           const char* what) {
    MulChar<F> c = MulChar<F>::trivial(grp);
    if (!j.contains("images")) throw err("SchemaError", std::string(what) + ".images missing");
    for (const auto& img : j.at("images")) {
        std::string g = img.at("generator").get<std::string>();
        Rot r = json_to_rot(img.at("rotation"), what);
        if (g == "pi")
            c.pi_rot = r;
        else if (g == "zeta")
            c.zeta_rot = r;
        else if (g.size() > 1 && g[0] == 'u') {
            std::size_t i = std::stoul(g.substr(1));
            if (i < 1 || i > c.basis_rots.size())
                throw err("SchemaError", std::string(what) + ": unknown generator " + g);
            c.basis_rots[i - 1] = r;
        } else {
            throw err("SchemaError", std::string(what) + ": unknown generator " + g);
        }
    }
    c.validate();
    return c;
}

// ----- local instances -----
struct LocalInstanceJson {
    std::shared_ptr<dichotomy::LocalSetting> setting;
    std::vector<dichotomy::CompChar> alpha;
    dichotomy::KOneChar beta;
    dichotomy::SplitChar chi_w, chi_v;
    std::optional<etale::LambdaVector> lambda;
};

json instance_to_json(const corpus::Instance& inst, bool good_beta,
                      const etale::LambdaVector* lambda = nullptr);
LocalInstanceJson json_to_instance(const json& j);

json sign_vector_to_json(const etale::SignVector& sv);
json hermitian_class_to_json(const etale::HermitianClass& h);

// ----- sum-check / dichotomy reports -----
json sum_check_to_json(const dichotomy::LocalSetting& s, const dichotomy::SumCheckResult& r);
json dichotomy_result_to_json(const dichotomy::DichotomyResult& r);

// ----- global -----
globalq::GlobalSetup json_to_global_setup(const json& j);
json decision_to_json(const globalq::DecisionReport& r);
json place_report_to_json(const globalq::PlaceReport& r);

}  // namespace toric::io
