#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epi/characters.hpp"
#include "epi/laurent.hpp"
#include "epi/linalg.hpp"

namespace epi {

/// Square matrix over a tower field.
class LFMatrix {
 public:
  LFMatrix() = default;
  LFMatrix(FieldPtr k, int n);

  static LFMatrix identity(const FieldPtr& k, int n);
  static LFMatrix scalar(const LFElem& a, int n);

  int size() const { return n_; }
  const FieldPtr& field() const { return k_; }
  LFElem& at(int i, int j) { return a_[i * n_ + j]; }
  const LFElem& at(int i, int j) const { return a_[i * n_ + j]; }

  LFMatrix operator+(const LFMatrix& o) const;
  LFMatrix operator-(const LFMatrix& o) const;
  LFMatrix operator*(const LFMatrix& o) const;
  LFMatrix operator-() const;
  LFMatrix times(const LFElem& c) const;
  LFElem trace() const;
  LFElem det() const;

 private:
  FieldPtr k_;
  int n_ = 0;
  std::vector<LFElem> a_;
};

/// Minimal stratum in normal form over a tame field K of F.  Entries sit
/// on a lattice-chain grading: entry (r,s) with w^nu has level
/// n nu + W_r - W_s, W_k = E (n-1-k).  The hereditary order is the level
/// >= 0 part and its radical the level >= 1 part.
struct Stratum {
  FieldPtr base;  // F
  FieldPtr field; // K
  int p = 0;
  int r = 0;
  int n = 0;      // p^r
  int e = 1;      // e(K|F)
  FqElem zeta;    // det alpha = zeta t^{-1}, zeta in k_F
  LFElem varpi_alpha;  // (-1)^{n-1} zeta^{-1} t, in K
  LFMatrix alpha;
  LFMatrix alpha_inv;
  std::vector<int> weights;
  int budget = 0; // levels computed modulo q^budget
  AddChar psi_k;

  int entry_level(int row, int col, int nu) const {
    return n * nu + weights[row] - weights[col];
  }
  /// Lower bound for the level of X (zero entries count at their precision).
  int level(const LFMatrix& x) const;
  /// Forget everything at level >= lvl.
  LFMatrix truncate(const LFMatrix& x, int lvl) const;
  /// Matrix of K[alpha] at level lvl: w^a alpha^{-b}, n a + E b = lvl, 0 <= b < n.
  LFMatrix kp_generator(int lvl) const;
  /// psi_B(x) = psi_K(tr x).
  QmodZ psi_b(const LFMatrix& x) const;
  /// (1+x)^{-1} modulo q^budget for x of level >= 1.
  LFMatrix unipotent_inverse(const LFMatrix& x) const;
};

/// Normal form alpha with alpha_{j+1,j} = 1 and alpha_{1,n} = varpi_alpha^{-1},
/// det alpha = zeta t^{-1}.  `perturb` (level >= 1) replaces alpha by
/// alpha (1 + perturb).
Stratum build_stratum(const FieldPtr& k, int p, int r, FqElem zeta,
                      const std::optional<LFMatrix>& perturb = std::nullopt);

/// Basis of V_{i,j} = q^i / q^{i+j}: one position per (level, row).
struct GradedSpace {
  struct Pos {
    int row, col, nu, level;
  };
  int i = 0;
  int j = 1;
  std::vector<Pos> basis;

  std::size_t dim() const { return basis.size(); }
  std::vector<FqElem> reduce(const Stratum& s, const LFMatrix& x) const;
  LFMatrix lift(const Stratum& s, const std::vector<FqElem>& v) const;
};

GradedSpace graded_space(const Stratum& s, int i, int j);

struct GradedMap {
  GradedSpace space;
  FqMatrix matrix;
};

/// x -> alpha x alpha^{-1} - x on V_{i,j}.
GradedMap conjugation_map(const Stratum& s, int i, int j);

struct GradedAnalysis {
  GradedMap a;
  GradedMap a_top;  // A^{n-1}
  GradedMap s_k;    // Ker s = Im A, Im s = Ker A
  FqMatrix u;       // A^{n-1} = u s_K on coordinates of Ker A
  std::size_t kernel_dim = 0;
  std::size_t rank = 0;
  bool nilpotent = false;
  bool top_image_is_kernel = false;
  bool kills_kp_line = false;
  bool u_invertible = false;
};

GradedAnalysis graded_map_analysis(const Stratum& s, int i, int j);

struct ConjugatorSolution {
  LFElem c;
  std::vector<FqElem> z;   // in V_{1,n-1}
  std::vector<FqElem> x;   // x_c = X_c(z) in V_{1,n-1}
  LFMatrix x_lift;
  bool residual_zero = false;  // B_c(x) = delta^{-1} in V_{1,n-1}
};

ConjugatorSolution solve_conjugator(const Stratum& s, const LFElem& c);

/// epsilon(w) for w in K[alpha] at level 0: psi_B(b) with A^{n-1}(b) = w in V_{0,1}.
QmodZ kp_epsilon(const Stratum& s, const LFMatrix& w);

struct IdentitySample {
  FqElem zeta;
  QmodZ conjugated;      // theta^{1+x}(1+y) via (1+v)(1+h) decomposition
  QmodZ pairing;         // psi_B(-c x y)
  QmodZ eta;             // eps(-alpha^{1-n} c^n y)
  QmodZ chi;             // psi_K(c (det(1+y) - 1))
  bool det_congruence = false;  // det(1+y) = 1 + zeta^n c^n det alpha^{-1} mod U^2
  QmodZ eps_zeta;        // eps(zeta)
  QmodZ psi_zeta;        // psi_K(zeta)
  bool scalar_image = false;    // A^{n-1}(zeta_0) = zeta I
  bool decomposition_in_kp = false;
};

struct IdentityReport {
  std::vector<IdentitySample> samples;
  bool theta_trivial_on_kp = false;
  /// Conjugation, epsilon and scalar-image checks; these only use that
  /// alpha generates a minimal stratum.
  bool conjugation_hold() const;
  /// Adds the determinant and theta checks, which need the normal form.
  bool all_hold() const;
};

IdentityReport verify_conjugation_identities(const Stratum& s,
                                             const ConjugatorSolution& sol,
                                             const std::vector<FqElem>& zetas);

struct OracleResult {
  FieldPtr field;
  std::vector<FqElem> roots;  // gamma with c = gamma w_K^{-1}
  std::size_t candidates = 0;
  std::string note;
};

/// Brute-force root set: keep c = gamma w_K^{-1} iff eta_c = chi_c on
/// every 1 + zeta c alpha^{-1}.
OracleResult oracle_root_set(const FieldPtr& k, int p, int r, FqElem zeta);

/// The normal-form matrix of size n = e p^r over F, rewritten over the
/// degree-e tame field K = F[alpha^{p^r}] inside its centralizer.
struct CentralizerForm {
  FieldPtr k;
  LFMatrix alpha_f;  // n x n over F
  LFMatrix alpha_k;  // p^r x p^r over K
  LFElem det_b;      // det over K
  LFElem norm_det_b; // N_{K/F}(det_B alpha)
  LFElem det_f;      // det over F
};

CentralizerForm centralizer_form(const FieldPtr& f, int n, int e, FqElem zeta);

}  // namespace epi
