#pragma once

#include "flatlink/links.hpp"

#include <string>
#include <vector>

namespace flatlink {

enum class Verdict { LinkingObstruction, ZeroMatrixNeedsCertificate, MixedNeedsIsotopyCheck, NoObstructionDetected };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::LinkingObstruction:
        return "LinkingObstruction";
    case Verdict::ZeroMatrixNeedsCertificate:
        return "ZeroMatrixNeedsCertificate";
    case Verdict::MixedNeedsIsotopyCheck:
        return "MixedNeedsIsotopyCheck";
    case Verdict::NoObstructionDetected:
        return "NoObstructionDetected";
    }
    return "?";
}

struct ObstructionVerdict {
    Verdict verdict = Verdict::NoObstructionDetected;
    std::string explanation;
    /// Entries (i, j), i < j, that decided the verdict.
    std::vector<std::pair<std::size_t, std::size_t>> triggers;
};

/**
 * Decision table, first match wins:
 *   some |Lk| >= 2                 -> LinkingObstruction
 *   all off-diagonal entries 0     -> ZeroMatrixNeedsCertificate (obstruction if certified nontrivial)
 *   both 0 and +-1 entries present -> MixedNeedsIsotopyCheck (obstruction if certified)
 *   all entries +-1                -> NoObstructionDetected
 * Fewer than two components carry no pairwise data and give NoObstructionDetected.
 */
inline ObstructionVerdict obstruction_report(const LinkingMatrix& m, bool nontrivial_certificate = false)
{
    check_linking_matrix(m);
    ObstructionVerdict out;
    const std::size_t n = m.size();
    if (n < 2) {
        out.verdict = Verdict::NoObstructionDetected;
        out.explanation = n == 0 ? "empty link: no pairwise linking numbers" : "one component: no pairwise linking numbers";
        return out;
    }
    std::vector<std::pair<std::size_t, std::size_t>> big, zero, unit;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const long long v = m[i][j] < 0 ? -m[i][j] : m[i][j];
            (v >= 2 ? big : v == 0 ? zero : unit).emplace_back(i, j);
        }
    }
    auto list = [](const std::vector<std::pair<std::size_t, std::size_t>>& ps, const LinkingMatrix& mat) {
        std::string s;
        for (auto [i, j] : ps) {
            if (!s.empty())
                s += ", ";
            s += "Lk(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(mat[i][j]);
        }
        return s;
    };
    if (!big.empty()) {
        out.verdict = Verdict::LinkingObstruction;
        out.triggers = big;
        out.explanation = list(big, m) + ": a great circle link has all linking numbers +-1";
    } else if (unit.empty()) {
        out.triggers = zero;
        if (nontrivial_certificate) {
            out.verdict = Verdict::LinkingObstruction;
            out.explanation = "all linking numbers 0 and the link is certified nontrivial: flats would be disjoint yet "
                              "bound an unlink at infinity";
        } else {
            out.verdict = Verdict::ZeroMatrixNeedsCertificate;
            out.explanation = "all linking numbers 0; an obstruction needs a certificate that the link is nontrivial";
        }
    } else if (!zero.empty()) {
        out.triggers = zero;
        out.triggers.insert(out.triggers.end(), unit.begin(), unit.end());
        if (nontrivial_certificate) {
            out.verdict = Verdict::LinkingObstruction;
            out.explanation = list(unit, m) + " with " + list(zero, m)
                              + ", certified: the sublinks cannot all be realized by great circles";
        } else {
            out.verdict = Verdict::MixedNeedsIsotopyCheck;
            out.explanation = list(unit, m) + " with " + list(zero, m)
                              + "; deciding needs an isotopy comparison not performed here";
        }
    } else {
        out.verdict = Verdict::NoObstructionDetected;
        out.triggers = unit;
        out.explanation = "all linking numbers are +-1; linking numbers alone do not obstruct";
    }
    return out;
}

} // namespace flatlink
