#ifndef ZK_FINGERPRINT_HPP
#define ZK_FINGERPRINT_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zk/bhr.hpp"
#include "zk/hochster.hpp"
#include "zk/properties.hpp"

namespace zk {

/// Computable isomorphism invariants of the bigraded Tor-algebra. Equality
/// of fingerprints is necessary for a bigraded ring isomorphism. Components
/// beyond the Betti tables are computed only below their caps (the 2^m
/// machinery behind nil/socle, the finite-field enumeration behind ind3);
/// which components are present is itself part of the comparison, and two
/// complexes with the same vertex count always agree on presence.
struct RingFingerprint {
    FieldTag field = FieldTag::GF2;
    int vertex_count = 0;
    BettiTable table;                        // bigraded ranks
    std::vector<long long> graded_dims;      // collapsed to total degree
    std::vector<long long> ann3_multiset;    // sorted dim ann_3(ω̃), ω ∈ MF, |ω| = 2
    std::optional<int> nil;
    std::optional<long long> socle;
    std::optional<long long> ind3_top;       // Gorenstein* only
};

struct FingerprintOptions {
    int sweep_cap = 24;          // Hochster subset sweep
    int ring_cap = 14;           // nil / socle (2^m piece machinery)
    std::uint64_t ind_enum_cap = 1u << 21;  // divisor enumeration
    int threads = 0;
};

template <class F>
RingFingerprint fingerprint(const Complex& K, const FingerprintOptions& opts = {}) {
    RingFingerprint fp;
    fp.field = FieldTraits<F>::tag();
    fp.vertex_count = K.m();
    SweepOptions sweep;
    sweep.vertex_cap = opts.sweep_cap;
    sweep.threads = opts.threads;
    fp.table = bigraded_betti<F>(K, sweep);
    fp.graded_dims = ma_cohomology_dims(fp.table);

    BhrRing<F> R(K);
    for (const FaceSet& mf : missing_faces(K)) {
        if (mf.size() != 2) continue;
        fp.ann3_multiset.push_back(R.annihilator_dim(R.omega_tilde(mf), 3));
    }
    std::sort(fp.ann3_multiset.begin(), fp.ann3_multiset.end());

    if (K.m() <= opts.ring_cap) {
        fp.nil = R.graded_power_dims(opts.ring_cap).nil;
        fp.socle = R.socle_dim(opts.ring_cap);
        if constexpr (FieldTraits<F>::is_finite) {
            if (is_generalized_homology_sphere<F>(K)) {
                int dim_r3 = static_cast<int>(fp.ann3_multiset.size());
                double points = 1;
                for (int i = 0; i < dim_r3; ++i) points *= FieldTraits<F>::order;
                if (points <= static_cast<double>(opts.ind_enum_cap)) {
                    auto res = R.factor_index(R.top_class(), 3, opts.ind_enum_cap);
                    if (res.exact) fp.ind3_top = res.lower;
                }
            }
        }
    }
    return fp;
}

inline RingFingerprint fingerprint(const Complex& K, FieldTag tag,
                                   const FingerprintOptions& opts = {}) {
    return with_field(tag, [&]<class F>() { return fingerprint<F>(K, opts); });
}

struct FingerprintComparison {
    bool equal = false;
    std::string first_difference;  // empty when equal
};

inline FingerprintComparison compare_fingerprints(const RingFingerprint& a,
                                                  const RingFingerprint& b) {
    auto differ = [](const std::string& what) {
        return FingerprintComparison{false, what};
    };
    if (a.field != b.field) return differ("field");
    if (a.vertex_count != b.vertex_count) return differ("vertex count");
    if (!a.table.same_entries(b.table)) {
        // locate the first differing entry for the report
        for (const auto& [key, r] : a.table.entries) {
            long long rb = b.table.rank(key.first, key.second);
            if (r != rb) {
                std::ostringstream os;
                os << "betti(-" << key.first << ",2*" << key.second << "): " << r << " vs " << rb;
                return differ(os.str());
            }
        }
        for (const auto& [key, r] : b.table.entries)
            if (a.table.rank(key.first, key.second) != r) {
                std::ostringstream os;
                os << "betti(-" << key.first << ",2*" << key.second << "): "
                   << a.table.rank(key.first, key.second) << " vs " << r;
                return differ(os.str());
            }
        return differ("betti table");
    }
    if (a.graded_dims != b.graded_dims) return differ("graded dims");
    if (a.ann3_multiset != b.ann3_multiset) return differ("ann3 multiset");
    if (a.nil.has_value() != b.nil.has_value() || a.nil != b.nil) return differ("nil");
    if (a.socle.has_value() != b.socle.has_value() || a.socle != b.socle) return differ("socle");
    if (a.ind3_top.has_value() != b.ind3_top.has_value() || a.ind3_top != b.ind3_top)
        return differ("ind3(top)");
    return {true, ""};
}

}  // namespace zk

#endif
