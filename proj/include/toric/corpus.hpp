#pragma once

#include "toric/dichotomy.hpp"

namespace toric::corpus {

// One generated local instance: the setting plus a coherent character pack.
struct Instance {
    std::shared_ptr<dichotomy::LocalSetting> setting;
    std::vector<dichotomy::CompChar> alpha;
    dichotomy::KOneChar beta_good;  // satisfies the compatibility condition
    dichotomy::KOneChar beta_bad;   // perturbed by a nontrivial K^1-character
    dichotomy::SplitChar chi_w, chi_v;
    std::string tag;
};

struct CorpusOpts {
    std::vector<Int> primes = {3, 5, 7};
    int k0 = 2;               // working depth; conductors up to k0
    int max_conductor = 2;    // filter for component characters
    std::size_t alphas_per_setting = 4;
    bool include_split_k = true;
    std::uint64_t seed = 1;
};

// Deterministic corpus spanning the etale shapes {F x F, unramified quad,
// ramified quad} and the non-split d-classes (plus optionally split K).
std::vector<Instance> build_corpus(const CorpusOpts& opts);

// Components of a single setting, exposed for the CLI and tests.
std::shared_ptr<dichotomy::LocalSetting> build_setting(const Int& p, int e_shape, int d_class,
                                                       int k0, std::uint64_t seed);

// beta matching the compatibility condition for the given data
dichotomy::KOneChar make_compatible_beta(const dichotomy::LocalSetting& s,
                                         const std::vector<dichotomy::CompChar>& alpha,
                                         const dichotomy::SplitChar& chi_w,
                                         const dichotomy::SplitChar& chi_v);
// multiply beta by a nontrivial character of K^1 (returns nullopt when the
// level-k quotient has no nontrivial character, which does not occur at the
// corpus levels)
std::optional<dichotomy::KOneChar> perturb_beta(const dichotomy::LocalSetting& s,
                                                const dichotomy::KOneChar& beta);

// norm-one characters of a component with conductor at most `max_cond`
std::vector<dichotomy::CompChar> component_characters(const dichotomy::LocalSetting& s,
                                                      std::size_t j, int max_cond);

// minimal-conductor splitting character solve
dichotomy::SplitChar minimal_mu(const dichotomy::LocalSetting& s);

// random lambda built from the class representatives times norms (for
// conjugation-invariance tests)
etale::LambdaVector scale_lambda_by_norm(const dichotomy::LocalSetting& s,
                                         const etale::LambdaVector& lam, Rng& rng);

}  // namespace toric::corpus
