// SPDX-License-Identifier: Apache-2.0
//
// squintless: wideband beam-squint mitigation with rotatable antenna arrays
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "squintless/quadratic.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace squintless
{

/// Dense complex matrix with Hermitian symmetry enforced at construction.
class HermitianMatrix
{
public:
    HermitianMatrix() = default;

    /// Symmetrizes `m`. Throws std::invalid_argument if `m` is not square or
    /// deviates from Hermitian by more than 1e-8 relative to its norm.
    explicit HermitianMatrix(Eigen::MatrixXcd m);

    static HermitianMatrix outer(const Eigen::VectorXcd &v);
    static HermitianMatrix zero(Eigen::Index n);

    const Eigen::MatrixXcd &matrix() const { return m_; }
    Eigen::Index rows() const { return m_.rows(); }

private:
    Eigen::MatrixXcd m_;
};

/// Nearest PSD matrix in Frobenius norm: eigenvalues clipped at zero.
/// Throws std::invalid_argument on non-finite entries.
HermitianMatrix psd_project(const HermitianMatrix &h);

/// maximize   sigma + Re Tr(D W)
/// subject to Tr(V_l W) >= sigma  for every l
///            W(n, n) = diag_value
///            W PSD
///
/// Each V_l is held as a factor F_l with V_l = F_l F_l^H; steering-vector
/// constraints are rank one (a single column).
struct SdpProblem
{
    std::vector<Eigen::MatrixXcd> gain_factors;
    HermitianMatrix linear_term;
    double diag_value = 0.0;
    double tolerance = 1e-6;
    int max_iterations = 100;

    Eigen::Index dimension() const { return linear_term.rows(); }
    HermitianMatrix gain_matrix(std::size_t l) const;

    /// Rank-one constraints from the columns of `steering` (N x L).
    static SdpProblem from_steering(const Eigen::MatrixXcd &steering, HermitianMatrix linear_term,
                                    double diag_value);
    /// General PSD constraint matrices, factored through their eigendecomposition.
    static SdpProblem from_matrices(std::span<const HermitianMatrix> gain_matrices, HermitianMatrix linear_term,
                                    double diag_value);
};

struct SdpResiduals
{
    double primal = 0.0; ///< diagonal error, negative eigenvalue mass and sigma excess
    double dual = 0.0;   ///< relative dual infeasibility
    double gap = 0.0;    ///< relative duality gap
};

struct SdpSolution
{
    HermitianMatrix W;
    double sigma = 0.0;     ///< min_l Tr(V_l W)
    double objective = 0.0; ///< sigma + Re Tr(D W)
    double dual_bound = 0.0;
    SdpResiduals residuals;
    int iterations = 0;
};

class SolverError : public std::runtime_error
{
public:
    SolverError(const std::string &what, SdpResiduals residuals = {})
        : std::runtime_error(what), residuals_(residuals)
    {
    }
    const SdpResiduals &residuals() const { return residuals_; }

private:
    SdpResiduals residuals_;
};

/// Primal-dual interior-point method (HKM direction, Mehrotra predictor-
/// corrector). Success means primal residual <= 1e-8 and dual residual and
/// relative gap <= problem.tolerance; otherwise throws SolverError.
SdpSolution solve_maxmin_sdp(const SdpProblem &problem);

struct ScalarMaxMin
{
    double mu = 0.0;
    double sigma = 0.0;
};

/// Global maximizer of h(mu) = min_l q_l(mu) over [lo, hi] for concave q_l
/// (a_l <= 0). Ties resolve to the smallest mu.
/// Throws std::invalid_argument if some a_l > 0, the list is empty or lo >= hi.
ScalarMaxMin solve_scalar_maxmin_quadratic(std::span<const Quadratic> coeffs, double lo, double hi);

} // namespace squintless
