#pragma once

// Independent assembly of the input matrices F_b, M_b from the primitive wrench terms of the
// model derivation, evaluated with plain 3x3 arithmetic so that any scalar type works.
// Straight wing: elevon deflection only tilts thrust into body z.
// Arched wing: general skew deflection matrices and a side-force coefficient C_y0.

#include <array>

namespace tailsitter::oracle {

template <class T>
using V3 = std::array<T, 3>;
template <class T>
using M3 = std::array<V3<T>, 3>;

template <class T>
struct Constants {
  T S_wet, S_p, C_d0, C_y0, pi, xi_f, xi_m, delta_r, a_y, p_x, p_y, b, c, km_over_kf;
};

template <class T>
struct Assembled {
  std::array<std::array<T, 4>, 3> F{}, M{};
};

template <class T>
V3<T> mv(const M3<T>& A, const V3<T>& x) {
  V3<T> y{T(0), T(0), T(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y[i] = y[i] + A[i][j] * x[j];
  return y;
}

template <class T>
V3<T> add(const V3<T>& a, const V3<T>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class T>
V3<T> scale(const T& s, const V3<T>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

template <class T>
M3<T> skew3(const V3<T>& v) {
  const T z(0);
  return {{{z, -v[2], v[1]}, {v[2], z, -v[0]}, {-v[1], v[0], z}}};
}

template <class T>
M3<T> diag3(const T& a, const T& b, const T& c) {
  const T z(0);
  return {{{a, z, z}, {z, b, z}, {z, z, c}}};
}

// Wrench for u = [T1, T2, w1, w2] with w_i = delta_i T_i. arched selects the general
// deflection matrices and keeps C_y0 wherever it appears.
template <class T>
std::pair<V3<T>, V3<T>> primitive_wrench(const Constants<T>& k, const std::array<T, 4>& u, bool arched) {
  const T zero(0);
  const T cl = T(2) * k.pi + k.C_d0;
  const T blown = k.S_wet / (T(4) * k.S_p);
  const T cy = arched ? k.C_y0 : zero;

  const M3<T> phi_fv = diag3(k.C_d0, cy, cl);
  M3<T> phi_mv = diag3(zero, zero, zero);
  phi_mv[1][2] = -(k.delta_r * cl) / k.c;
  phi_mv[2][1] = (k.delta_r * cy) / k.c;
  const M3<T> Bmat = diag3(k.b, k.c, k.b);

  // motor 1 and wing half 1 on the side of -y for a signed offset
  const V3<T> a1{zero, -k.a_y, zero}, a2{zero, k.a_y, zero};
  const V3<T> p1{k.p_x, -k.p_y, zero}, p2{k.p_x, k.p_y, zero};

  const V3<T> T1{u[0], zero, zero}, T2{u[1], zero, zero};
  // Delta_i T_i as a function of w_i = delta_i T_i
  auto deflect = [&](const T& xi, const T& w) -> V3<T> {
    if (arched) return {zero, xi * w, -(xi * w)};
    return {zero, zero, -(xi * w)};
  };
  const V3<T> df1 = deflect(k.xi_f, u[2]), df2 = deflect(k.xi_f, u[3]);
  const V3<T> dm1 = deflect(k.xi_m, u[2]), dm2 = deflect(k.xi_m, u[3]);

  const V3<T> Tsum = add(T1, T2);
  const M3<T> I = diag3(T(1), T(1), T(1));
  M3<T> thrust_drag = I;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) thrust_drag[i][j] = I[i][j] - blown * phi_fv[i][j];

  V3<T> F = mv(thrust_drag, Tsum);
  F = add(F, scale(blown, mv(phi_fv, add(df1, df2))));

  V3<T> M = scale(-blown, mv(Bmat, mv(phi_mv, Tsum)));
  M = add(M, scale(blown, mv(Bmat, mv(phi_mv, add(dm1, dm2)))));
  // wing drag differential; the derivation's per-term results carry this sign
  M = add(M, scale(blown, add(mv(skew3(a1), mv(phi_fv, T1)), mv(skew3(a2), mv(phi_fv, T2)))));
  M = add(M, scale(blown, add(mv(skew3(a1), mv(phi_fv, df1)), mv(skew3(a2), mv(phi_fv, df2)))));
  M = add(M, add(mv(skew3(p1), T1), mv(skew3(p2), T2)));
  M = add(M, V3<T>{k.km_over_kf * (u[0] - u[1]), zero, zero});
  return {F, M};
}

template <class T>
Assembled<T> assemble(const Constants<T>& k, bool arched) {
  Assembled<T> out;
  for (int col = 0; col < 4; ++col) {
    std::array<T, 4> u{T(0), T(0), T(0), T(0)};
    u[col] = T(1);
    const auto [F, M] = primitive_wrench(k, u, arched);
    for (int r = 0; r < 3; ++r) {
      out.F[r][col] = F[r];
      out.M[r][col] = M[r];
    }
  }
  return out;
}

}  // namespace tailsitter::oracle
