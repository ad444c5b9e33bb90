#ifndef SULLIVAN_TRIVIALITY_HPP
#define SULLIVAN_TRIVIALITY_HPP

#include "sullivan/shriek.hpp"

namespace sullivan {

/* One named exact witness, printed form. */
struct CertWitness {
    std::string label;
    std::string value;
};

/* Outcome of a triviality analysis. "not_certified" never asserts
 * non-triviality: the theorem routes give sufficient conditions only. */
struct TrivialityCertificate {
    std::string target;  // "Dlcop" or "Dlp"
    bool certified = false;
    std::string route;   // "part1", "part2", "part3" or "none"
    std::string reason;  // populated when not certified
    std::vector<CertWitness> witnesses;
    bool used_semipure_replacement = false;
};

struct DlcopOptions {
    int max_degree = -1;          // verification bound; -1 selects the default
    std::string route = "auto";   // auto | part1 | part3
    std::string part1_generator;  // name of the odd base generator, empty = auto
    bool reduce_semipure = false; // allow the quadratic semi-pure replacement for part1
};

struct DlpOptions {
    int max_degree = -1;
    std::string part2_generator;  // name of the even top generator, empty = auto
};

TrivialityCertificate analyze_dlcop(const CdgaPresentation& A, const DlcopOptions& opt = {});
TrivialityCertificate analyze_dlp(const CdgaPresentation& A, const DlpOptions& opt = {});

/* P ⊗_{∧V⊗²} L⊗² and ∧V ⊗_{∧V⊗²} L⊗², presented as free cdgas.
 * `big` layout:    base generator j -> 5j + {0: v@1, 1: v@2, 2: v~,
 *                                            3: v~@1, 4: v~@2}.
 * `target` layout: base generator j -> 3j + {0: v, 1: v~@1, 2: v~@2}. */
struct LoopTensorSquare {
    ModelPtr model;
    CdgaPresentation big;
    CdgaPresentation target;
    AlgebraMap eps;          // big -> target, kills the model bars
    AlgebraMap double_into;  // doubled algebra embedding: model -> big

    int big_first(int j) const { return 5 * j; }
    int big_second(int j) const { return 5 * j + 1; }
    int big_bar(int j) const { return 5 * j + 2; }
    int big_loop1(int j) const { return 5 * j + 3; }
    int big_loop2(int j) const { return 5 * j + 4; }
    int tgt_gen(int j) const { return 3 * j; }
    int tgt_loop1(int j) const { return 3 * j + 1; }
    int tgt_loop2(int j) const { return 3 * j + 2; }
};

LoopTensorSquare build_loop_tensor_square(ModelPtr model);

/* Section of eps: a dga map psi with eps . psi = id, built generator by
 * generator; each second-factor bar picks up a correction solved in
 * ker(eps). */
struct SectionPsi {
    AlgebraMap psi;                  // target -> big
    std::vector<Poly> corrections;   // per base generator, over `big`
};

SectionPsi build_section_psi(const LoopTensorSquare& L);

/* delta ⊗ id applied to an element of `big`: evaluates the cocycle on the
 * model-bar part of each monomial. */
Poly delta_tensor_id(const LoopTensorSquare& L, const DualCochain& delta, const Poly& z);

/* Appendix-level structure reductions. */
struct SemipureReduction {
    CdgaPresentation reduced;
    AlgebraMap projection;  // input -> reduced, a surjective quasi-isomorphism
    bool changed = false;
    std::vector<std::string> removed_pairs;  // "(u, d0 u)" descriptions
};

/* Quadratic-or-less differential required. Splits off the acyclic pairs
 * generated by even generators with nonzero linear differential; the
 * quotient is semi-pure with the same cohomology. */
SemipureReduction semipure_reduce(const CdgaPresentation& A);

bool is_quadratic(const CdgaPresentation& A);

struct PureDecomposition {
    CdgaPresentation core;          // pure and minimal
    CdgaPresentation contractible;  // pure with vanishing positive cohomology
    CdgaPresentation combined;      // core ⊗ contractible
    AlgebraMap split;               // input -> combined
    AlgebraMap merge;               // combined -> input
};

/* Splits a pure algebra into a minimal pure core and a contractible
 * factor, with inverse dga isomorphisms as witnesses. */
PureDecomposition pure_decompose(const CdgaPresentation& A);

/* Degree-preserving algebra isomorphism inversion by degreewise exact
 * solves; throws if `f` is not invertible. */
AlgebraMap invert_iso(const AlgebraMap& f);

int default_degree_bound(const CdgaPresentation& A);

}  // namespace sullivan

#endif
