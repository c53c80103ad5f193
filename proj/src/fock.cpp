// Copyright 2026 The aqt-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aqtsim/fock.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "aqtsim/errors.hpp"

namespace aqtsim {

namespace {

using CMat = Eigen::MatrixXcd;
using Cplx = std::complex<double>;

CMat lowering_operator(int dim) {
    CMat a = CMat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

}  // namespace

Eigen::MatrixXcd fock_density(const GaussianState& s, int dim) {
    if (s.n_modes() != 1) {
        throw std::invalid_argument("fock_density: implemented for single-mode states");
    }
    if (dim < 2) {
        throw std::invalid_argument("fock_density: dimension must be at least 2");
    }

    // Decompose the covariance as a rotated squeezed thermal state: the
    // smaller principal variance lies along (cos phi, sin phi).
    Eigen::SelfAdjointEigenSolver<Mat> es(s.cov());
    const double lambda1 = es.eigenvalues()(0);
    const double lambda2 = es.eigenvalues()(1);
    if (!(lambda1 > 0.0)) {
        throw std::invalid_argument("fock_density: covariance is not positive definite");
    }
    const double n_thermal = std::max(0.0, (std::sqrt(lambda1 * lambda2) - 1.0) / 2.0);
    const double squeeze = 0.25 * std::log(lambda2 / lambda1);
    const double phi = std::atan2(es.eigenvectors()(1, 0), es.eigenvectors()(0, 0));

    CMat rho = CMat::Zero(dim, dim);
    if (n_thermal == 0.0) {
        rho(0, 0) = 1.0;
    } else {
        const double ratio = n_thermal / (n_thermal + 1.0);
        double p = 1.0 / (n_thermal + 1.0);
        for (int n = 0; n < dim; ++n) {
            rho(n, n) = p;
            p *= ratio;
        }
    }

    const CMat a = lowering_operator(dim);
    if (squeeze != 0.0) {
        const CMat gen = 0.5 * squeeze * (a * a - (a.adjoint() * a.adjoint()));
        const CMat sq = gen.exp();
        rho = sq * rho * sq.adjoint();
    }
    if (phi != 0.0) {
        CMat rot = CMat::Zero(dim, dim);
        for (int n = 0; n < dim; ++n) {
            rot(n, n) = std::exp(Cplx(0.0, phi * n));
        }
        rho = rot * rho * rot.adjoint();
    }
    const Cplx alpha(s.mean()(0) / 2.0, s.mean()(1) / 2.0);
    if (alpha != Cplx(0.0, 0.0)) {
        const CMat gen = alpha * a.adjoint() - std::conj(alpha) * a;
        const CMat disp = gen.exp();
        rho = disp * rho * disp.adjoint();
    }

    const double tail = std::abs(1.0 - rho.trace().real()) + std::abs(rho(dim - 1, dim - 1));
    if (tail > 1e-8) {
        throw TruncationError("fock_density: truncated tail mass too large for dimension " +
                                  std::to_string(dim),
                              2 * dim);
    }
    return rho;
}

double fock_overlap(const GaussianState& a, const GaussianState& b, int dim) {
    const CMat rho1 = fock_density(a, dim);
    const CMat rho2 = fock_density(b, dim);

    Eigen::SelfAdjointEigenSolver<CMat> es1(rho1);
    const Eigen::VectorXd clamped = es1.eigenvalues().cwiseMax(0.0);
    const CMat sqrt1 = es1.eigenvectors() *
                       clamped.cwiseSqrt().asDiagonal().toDenseMatrix().cast<Cplx>() *
                       es1.eigenvectors().adjoint();
    CMat inner = sqrt1 * rho2 * sqrt1;
    inner = (inner + inner.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> es2(inner, Eigen::EigenvaluesOnly);

    double root_sum = 0.0;
    for (int i = 0; i < dim; ++i) {
        root_sum += std::sqrt(std::max(0.0, es2.eigenvalues()(i)));
    }
    return std::min(1.0, root_sum * root_sum);
}

}  // namespace aqtsim
