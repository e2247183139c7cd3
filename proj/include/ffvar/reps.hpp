#pragma once
// Galois-representation data: local Frobenius traces a_{v,m} at places v,
// and the generalized von Mangoldt function built from them.  Two concrete
// representations ship: the trivial one (classical von Mangoldt) and the
// rank-2 family attached to the curve y^2 = x(x-1)(x-t).

#include "ffvar/gf.hpp"
#include "ffvar/poly.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace ffvar {

enum class RepKind { trivial, legendre };

class Representation {
public:
    virtual ~Representation() = default;
    virtual RepKind kind() const = 0;
    virtual std::string name() const = 0;
    virtual int dim() const = 0;
    virtual int weight() const = 0;
    // finite places where inertia acts nontrivially
    virtual const std::vector<Poly>& ramified_places() const = 0;
    virtual bool is_ramified(const Poly& prime) const;
    // a_{v,m} = Tr(Frob_v^m | V_v) as an exact integer; thread-safe, memoized
    virtual int64_t local_trace(const Poly& prime, int m) const = 0;
    virtual int local_dim(const Poly& prime) const = 0;
    const FieldSpec& field() const { return F_; }

protected:
    explicit Representation(const FieldSpec& F) : F_(F) {}
    FieldSpec F_;
};

using RepPtr = std::shared_ptr<const Representation>;

RepPtr trivial_rep(const FieldSpec& F);
// Requires characteristic > 3.
RepPtr legendre_rep(const FieldSpec& F);
RepPtr make_rep(const FieldSpec& F, const std::string& selector);  // "trivial"/"legendre"
RepPtr make_rep(const FieldSpec& F, RepKind kind);

// Trace at a good place of the Legendre family: a_{v,1} by point count over
// the residue field, higher m through s_m = a s_{m-1} - q_v s_{m-2}.
int64_t legendre_good_trace(const FieldSpec& F, const Poly& prime, int m);
// Trace at a ramified place (t or t-1): nonsingular point count, a in {+1,-1},
// a_{v,m} = a^m.
int64_t legendre_bad_trace(const FieldSpec& F, const Poly& prime, int m);

// Lambda_rho(f) = deg(P) * a_{v_P,m} when f = c P^m, else 0.  f = 0 throws.
int64_t von_mangoldt(const Representation& rep, const Poly& f);

}  // namespace ffvar
