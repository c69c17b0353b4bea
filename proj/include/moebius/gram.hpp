#pragma once

#include "moebius/cells.hpp"
#include "moebius/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moebius {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct GramMatrix {
    Family family = Family::Rook;
    int n = 0;
    int lambda_ts = 0;
    std::vector<HalfDiagram> row_labels;  // tops, listed by their star images
    std::vector<HalfDiagram> col_labels;  // bottoms
    RationalMatrix entries;
};

/// c when bottom o star(top_star) = c w keeps lambda through strands, else 0.
Rational gram_entry(const HalfDiagram& bottom, const HalfDiagram& top_star, const ParamSet& ps,
                    const MonoidParams& mp);

/// Dimension guard: 2000.
GramMatrix gram_matrix(Family f, int n, int lambda, const ParamSet& ps, std::size_t guard = 2000);
GramMatrix gram_matrix(Family f, int n, int lambda, const ParamSet& ps,
                       const std::vector<HalfDiagram>& halves);

struct RankReport {
    long rank = 0;
    std::optional<Rational> det;
    std::optional<bool> condition_holds;
    std::optional<BigInt> closed_form_prediction;
};

RankReport exact_rank(const RationalMatrix& mat);

Rational gram_det_closed_form_rook0(int n, const Rational& alpha0, const Rational& beta0,
                                    const Rational& gamma0);
bool gramcond_check(int n, int lambda, const Rational& alpha0, const Rational& beta0,
                    const Rational& gamma0);

BigInt simple_dimension(Family f, int n, int lambda, const ParamSet& ps);

std::string matrix_to_csv(const RationalMatrix& mat);
RationalMatrix matrix_from_csv(const std::string& text);

} // namespace moebius
