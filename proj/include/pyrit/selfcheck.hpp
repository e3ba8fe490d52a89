#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pyrit/codec.hpp"
#include "pyrit/matrix.hpp"
#include "pyrit/ring.hpp"
#include "pyrit/transform.hpp"

namespace pyrit {

/*
 * Exhaustive algebra suites behind `verify`.  Each suite reports how
 * many cases it ran so a pass is auditable.  The optional fault flips
 * one bit of the idempotent the suites build on, which must make them
 * fail: it proves the checks are live, not vacuous.
 */

struct CheckResult {
    std::string name;
    bool pass = true;
    std::uint64_t cases = 0;
};

inline std::vector<CheckResult> run_selfcheck(const FieldSpec& spec,
                                              bool inject_theta_fault = false) {
    // The fault flips bit 1, not bit 0: theta ^ 1 is the complementary
    // idempotent, which would still satisfy the first two suites.
    const RingElem theta =
        static_cast<RingElem>(idempotent_theta1(spec) ^ (inject_theta_fault ? 2u : 0u));
    const auto phi = [&](FieldElem b) { return ring_mul(b & spec.field_mask(), theta, spec); };

    std::vector<CheckResult> out;

    {
        CheckResult c{"idempotency theta^2 = theta"};
        c.cases = 1;
        c.pass = ring_mul(theta, theta, spec) == theta;
        out.push_back(c);
    }
    {
        CheckResult c{"homomorphism phi(a*b) = phi(a)*phi(b)"};
        for (FieldElem a = 0; a < spec.field_size(); ++a)
            for (FieldElem b = 0; b < spec.field_size(); ++b) {
                ++c.cases;
                const bool mul_ok =
                    phi(gf_mul(a, b, spec)) == ring_mul(phi(a), phi(b), spec);
                const bool add_ok = phi(gf_add(a, b)) == (phi(a) ^ phi(b));
                if (!mul_ok || !add_ok) c.pass = false;
            }
        out.push_back(c);
    }
    {
        CheckResult c{"ideal characterization over the whole ring"};
        for (std::uint32_t a = 0; a < spec.ring_size(); ++a) {
            ++c.cases;
            const bool parity_form = in_ideal_A1(static_cast<RingElem>(a), spec);
            const bool image_form =
                phi(phi1_inv(static_cast<RingElem>(a), spec)) == static_cast<RingElem>(a);
            if (parity_form != image_form) c.pass = false;
        }
        out.push_back(c);
    }
    {
        CheckResult c{"mixed representative product identity"};
        const auto comps = complement_elements(spec);
        if (spec.w <= 4) {
            for (FieldElem u = 0; u < spec.field_size(); ++u)
                for (FieldElem v = 0; v < spec.field_size(); ++v)
                    for (RingElem eu : comps)
                        for (RingElem ev : comps) {
                            ++c.cases;
                            const RingElem prod = ring_mul(static_cast<RingElem>(phi(u) ^ eu),
                                                           static_cast<RingElem>(phi(v) ^ ev),
                                                           spec);
                            if (phi1_inv(prod, spec) != gf_mul(u, v, spec)) c.pass = false;
                        }
        } else {
            std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
            for (unsigned i = 0; i < 100000; ++i) {
                ++c.cases;
                const FieldElem u = static_cast<FieldElem>(rng() & spec.field_mask());
                const FieldElem v = static_cast<FieldElem>(rng() & spec.field_mask());
                const RingElem eu = comps[rng() % comps.size()];
                const RingElem ev = comps[rng() % comps.size()];
                const RingElem prod = ring_mul(static_cast<RingElem>(phi(u) ^ eu),
                                               static_cast<RingElem>(phi(v) ^ ev), spec);
                if (phi1_inv(prod, spec) != gf_mul(u, v, spec)) c.pass = false;
            }
        }
        out.push_back(c);
    }
    {
        CheckResult c{"transform roundtrips"};
        for (FieldElem b = 0; b < spec.field_size(); ++b) {
            ++c.cases;
            if (phi_E_inv(phi_E(b, spec), spec) != b) c.pass = false;
            if ((phi_P(b, spec) & spec.field_mask()) != b) c.pass = false;
            if (!in_ideal_A1(phi_P(b, spec), spec)) c.pass = false;
        }
        out.push_back(c);
    }
    {
        // 1x1 parity-path coding identity: encode by [m], decode by
        // [1/m], both through the parity pipeline, must return d.
        CheckResult c{"parity-path coding identity"};
        for (FieldElem m = 1; m < spec.field_size(); ++m)
            for (FieldElem d = 0; d < spec.field_size(); ++d) {
                ++c.cases;
                const RingElem enc =
                    ring_mul(sparse_transform(m, spec), phi_P(d, spec), spec);
                const FieldElem p = static_cast<FieldElem>(enc & spec.field_mask());
                const RingElem dec =
                    ring_mul(sparse_transform(gf_inv(m, spec), spec), phi_P(p, spec), spec);
                if (static_cast<FieldElem>(dec & spec.field_mask()) != d) c.pass = false;
            }
        out.push_back(c);
    }
    {
        CheckResult c{"MDS grid k,r in [1,6]"};
        for (unsigned k = 1; k <= 6; ++k)
            for (unsigned r = 1; r <= 6; ++r) {
                if (k + r > spec.field_size()) continue;
                ++c.cases;
                if (!is_mds(cauchy_parity_matrix(k, r, spec))) c.pass = false;
            }
        out.push_back(c);
    }
    return out;
}

} // namespace pyrit
