#pragma once

#include "orientarith/exact.hpp"
#include "orientarith/measures.hpp"
#include "orientarith/momgroups.hpp"
#include "orientarith/report.hpp"
#include "orientarith/sequence.hpp"

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace orient {

enum class Variant { spin, string };

unsigned start_half_weight(Variant v);  // 1 for spin, 2 for string
std::string to_string(Variant v);
Variant parse_variant(const std::string& s);

// Characteristic sequence b_{2k}, k >= start_half_weight(variant).
struct KOSeq {
    Variant variant = Variant::string;
    EvenSeq<Rational> b;
};

// Multipliers r_{2k}, k >= 2, for the forms r_{2k} G_{2k}.
struct TmfSeq {
    EvenSeq<Rational> multipliers;
    friend bool operator==(const TmfSeq&, const TmfSeq&) = default;
};

struct QExpansion {
    unsigned weight = 0;
    Rational a0;
    std::vector<Int> a;  // a[n - 1] = a_n

    size_t terms() const { return a.size(); }
    friend bool operator==(const QExpansion&, const QExpansion&) = default;
};

QExpansion operator*(const Int& s, const QExpansion& f);

// -B_w/(2w) at weight w.
Rational eisenstein_constant(unsigned weight);
QExpansion eisenstein(unsigned weight, unsigned T);
QExpansion hecke_Tp(const QExpansion& f, Prime p, unsigned T);

// t = b - (-B/2k): the coordinate relative to the Atiyah-Bott-Shapiro point.
EvenSeq<Rational> torsor_coordinate(const KOSeq& seq);

// c_samples, when given, add a direct check of the twisted measure condition at every p in S_{K-m}.
CheckReport ko_check(const KOSeq& seq, unsigned K, std::span<const Int> c_samples = {});
KOSeq ko_from_lattice(Variant v, const std::vector<Int>& l, unsigned K);
std::vector<Int> ko_to_lattice(const KOSeq& seq, unsigned K);

CheckReport tmf_check(const TmfSeq& seq, unsigned K, unsigned q_terms);
TmfSeq psi2_apply(const EvenSeq<Int>& q, unsigned K);
KOSeq cusp_evaluate(const TmfSeq& seq);

struct Obstruction {
    Prime prime;
    unsigned weight;
    long deficit;
    std::string reason;
};

using LiftResult = std::variant<TmfSeq, Obstruction>;

LiftResult lift_to_tmf(const KOSeq& seq, unsigned K);

// Zeta-ideal membership at p through the measure side: divide by the zeta moments, then test
// the quotient for (B)_p. precision 0 picks a precision large enough for every congruence up to K.
CheckReport zeta_ideal_check(const KOSeq& seq, Prime p, const Int& c, unsigned K, unsigned precision = 0);

// p-local spin extension of string data, in coordinates relative to the Atiyah-Bott-Shapiro point.
EvenSeq<Rational> spin_extend(Prime p, const PadicResidue& b2_target, const std::vector<Int>& l_string, unsigned K);
// Euler-stripped congruences at p only, entries in Z_(p).
CheckReport local_euler_check(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K);
// The image of string data in Z_p: the b_2 forced by the tail, to the precision it is forced.
PadicResidue string_to_zp(Prime p, const EvenSeq<Rational>& string_seq, unsigned K);
bool pullback_check(const EvenSeq<Rational>& spin_seq, const EvenSeq<Rational>& string_seq, Prime p, unsigned K);

}  // namespace orient
