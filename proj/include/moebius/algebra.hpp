#pragma once

#include "moebius/diagram.hpp"
#include "moebius/params.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace moebius {

/// Finite Q-combination of normalized diagrams n -> m. Zero terms are never stored.
class LinComb {
public:
    LinComb(int n, int m) : n_(n), m_(m) {}
    explicit LinComb(const Diagram& d, const Rational& c = 1);

    int n() const { return n_; }
    int m() const { return m_; }
    const std::map<Diagram, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Diagram& d, const Rational& c);
    LinComb& operator+=(const LinComb& other);
    LinComb scaled(const Rational& c) const;

    friend bool operator==(const LinComb&, const LinComb&) = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::map<Diagram, Rational> terms_;
};

/// alpha_h, beta_h or gamma_h after normalizing the Mobius count.
Rational evaluate_closed(Decoration dec, const ParamSet& ps);

/// Writes c * d with handle counts >= K expanded by the handle relation.
void add_reduced(LinComb& out, const Diagram& d, const Rational& c, const ParamSet& ps);

/// f o g (g first). Throws PreconditionError on boundary mismatch.
LinComb compose(const LinComb& f, const LinComb& g, const ParamSet& ps);
LinComb compose(const Diagram& f, const Diagram& g, const ParamSet& ps);

LinComb tensor(const LinComb& f, const LinComb& g);
LinComb star(const LinComb& f);
bool equal(const LinComb& x, const LinComb& y);

/// 0/1 values of alpha_k, beta_k, gamma_k for k < K (rows indexed by mob).
struct EvaluationTable {
    std::array<std::vector<Rational>, 3> values;

    static EvaluationTable constant(int K, int v);
    /// Throws PreconditionError when a value is not 0 or 1 or a row has the wrong length.
    void validate(int K) const;
    bool at(long h, long mob) const;
};

/// nullopt is the formal zero.
using MonoidValue = std::optional<Diagram>;

MonoidValue monoid_compose(const Diagram& x, const Diagram& y, const MonoidParams& mp,
                           const EvaluationTable& evals);
MonoidValue monoid_compose(const MonoidValue& x, const MonoidValue& y, const MonoidParams& mp,
                           const EvaluationTable& evals);

std::string lincomb_to_json_text(const LinComb& x);

} // namespace moebius
