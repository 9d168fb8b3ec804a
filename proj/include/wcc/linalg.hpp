// SPDX-License-Identifier: Apache-2.0
//
// wcc: physical-layer schemes for cache-aided multi-antenna downlinks
// Copyright (C) 2026 The wcc authors
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

// Small dense complex linear algebra: Hermitian eigendecomposition by cyclic
// Jacobi rotations, unit null vectors, and projections onto the PSD cone and
// the trace-one PSD set. Matrices here are at most 16x16.

#pragma once

#include "wcc/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <stdexcept>
#include <vector>

namespace wcc {

template <typename Real>
struct EigDecomp {
    RVectorT<Real> values;   // descending
    CMatrixT<Real> vectors;  // unitary, column i pairs with values(i)
    int sweeps = 0;
};

// Rotates v so that its largest-magnitude entry (first one on ties) is real and positive.
template <typename Real>
void fix_phase(CVectorT<Real>& v)
{
    if (v.size() == 0)
        return;
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best)))
            best = i;
    const Real mag = std::abs(v(best));
    if (mag == Real(0))
        return;
    v *= std::conj(v(best)) / mag;
    v(best) = std::complex<Real>(std::abs(v(best)), Real(0));
}

template <typename Real>
EigDecomp<Real> hermitian_eig(const CMatrixT<Real>& input, Real tol = Real(1e-12), int max_sweeps = 100)
{
    using C = std::complex<Real>;
    if (input.rows() != input.cols())
        throw std::invalid_argument("hermitian_eig needs a square matrix.");
    if (!input.allFinite())
        throw std::invalid_argument("hermitian_eig: matrix has non-finite entries.");

    const Eigen::Index n = input.rows();
    CMatrixT<Real> A = (input + input.adjoint()) * Real(0.5);
    CMatrixT<Real> V = CMatrixT<Real>::Identity(n, n);

    auto off_norm = [&A, n] {
        Real s = 0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = 0; q < n; ++q)
                if (p != q)
                    s += std::norm(A(p, q));
        return std::sqrt(s);
    };

    const Real scale = std::max(A.norm(), std::numeric_limits<Real>::min());
    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const C apq = A(p, q);
                const Real mag = std::abs(apq);
                if (mag == Real(0))
                    continue;
                // Phase-rotate column q so the pivot is real, then apply a real
                // rotation in the (p, q) plane. Combined 2x2 block is G = D R.
                const C d = std::conj(apq) / mag;
                const Real tau = (A(q, q).real() - A(p, p).real()) / (Real(2) * mag);
                const Real t = (tau >= Real(0) ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
                const Real c = Real(1) / std::sqrt(Real(1) + t * t);
                const Real s = t * c;
                const C gpp = c, gpq = s, gqp = -s * d, gqq = c * d;

                const CVectorT<Real> colp = A.col(p), colq = A.col(q);
                A.col(p) = colp * gpp + colq * gqp;
                A.col(q) = colp * gpq + colq * gqq;
                const Eigen::Matrix<C, 1, Eigen::Dynamic> rowp = A.row(p), rowq = A.row(q);
                A.row(p) = std::conj(gpp) * rowp + std::conj(gqp) * rowq;
                A.row(q) = std::conj(gpq) * rowp + std::conj(gqq) * rowq;
                A(p, q) = A(q, p) = C(0);
                A(p, p) = C(A(p, p).real(), 0);
                A(q, q) = C(A(q, q).real(), 0);

                const CVectorT<Real> vp = V.col(p), vq = V.col(q);
                V.col(p) = vp * gpp + vq * gqp;
                V.col(q) = vp * gpq + vq * gqq;
            }
        }
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&A](Eigen::Index a, Eigen::Index b) { return A(a, a).real() > A(b, b).real(); });

    EigDecomp<Real> out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    out.sweeps = sweep;
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = A(order[i], order[i]).real();
        CVectorT<Real> v = V.col(order[i]);
        fix_phase(v);
        out.vectors.col(i) = v;
    }
    return out;
}

// Unit vector orthogonal to every column of `constraints` (L x m, m <= L-1).
// The null space is the top eigenvector of the projector I - B (B^H B)^-1 B^H.
// Throws DegenerateChannelError when the columns are numerically dependent.
template <typename Real>
CVectorT<Real> unit_null_vector(const CMatrixT<Real>& constraints, Real rank_tol = Real(1e-9))
{
    const Eigen::Index L = constraints.rows();
    const Eigen::Index m = constraints.cols();
    if (L < 1)
        throw std::invalid_argument("unit_null_vector: empty ambient space.");
    if (m >= L)
        throw std::invalid_argument("unit_null_vector: " + std::to_string(m) + " constraints leave no null space in dimension " +
                                    std::to_string(L) + ".");
    if (m == 0) {
        CVectorT<Real> e = CVectorT<Real>::Zero(L);
        e(0) = Real(1);
        return e;
    }

    const CMatrixT<Real> gram = constraints.adjoint() * constraints;
    const auto ge = hermitian_eig<Real>(gram);
    const Real top = ge.values(0);
    const Real bottom = ge.values(m - 1);
    if (!(top > Real(0)) || !(bottom > Real(0)) || std::sqrt(bottom / top) < rank_tol)
        throw DegenerateChannelError("Zero-forcing constraints are rank deficient (singular value ratio " +
                                     std::to_string(top > Real(0) && bottom > Real(0) ? std::sqrt(bottom / top) : Real(0)) +
                                     ").");

    CMatrixT<Real> gram_inv = ge.vectors * ge.values.cwiseInverse().asDiagonal() * ge.vectors.adjoint();
    CMatrixT<Real> projector = CMatrixT<Real>::Identity(L, L) - constraints * gram_inv * constraints.adjoint();
    const auto pe = hermitian_eig<Real>(projector);
    CVectorT<Real> u = pe.vectors.col(0);
    u.normalize();
    fix_phase(u);
    return u;
}

// Euclidean projection of v onto {x >= 0, sum x = total}.
template <typename Real>
RVectorT<Real> project_simplex(const RVectorT<Real>& v, Real total = Real(1))
{
    const Eigen::Index n = v.size();
    if (n == 0)
        return v;
    std::vector<Real> sorted(v.data(), v.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<Real>());
    Real cumulative = 0;
    Real theta = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += sorted[i];
        const Real candidate = (cumulative - total) / Real(i + 1);
        if (sorted[i] - candidate > Real(0))
            theta = candidate;
    }
    return (v.array() - theta).cwiseMax(Real(0)).matrix();
}

// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to zero.
template <typename Real>
CMatrixT<Real> project_psd(const CMatrixT<Real>& A)
{
    const auto e = hermitian_eig<Real>(A);
    const RVectorT<Real> clamped = e.values.cwiseMax(Real(0));
    CMatrixT<Real> out = e.vectors * clamped.asDiagonal() * e.vectors.adjoint();
    return (out + out.adjoint()) * Real(0.5);
}

// Nearest matrix in {V PSD, tr V = 1}: eigenvalues projected onto the probability simplex.
template <typename Real>
CMatrixT<Real> project_psd_trace_one(const CMatrixT<Real>& A)
{
    const auto e = hermitian_eig<Real>(A);
    const RVectorT<Real> lambda = project_simplex<Real>(e.values, Real(1));
    CMatrixT<Real> out = e.vectors * lambda.asDiagonal() * e.vectors.adjoint();
    return (out + out.adjoint()) * Real(0.5);
}

} // namespace wcc
