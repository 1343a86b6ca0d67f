#pragma once

#include "qres/common.hpp"
#include "qres/pauli.hpp"

namespace qres::encoding {

enum class Encoding { OneHotJW, GrayCode };

const char* to_string(Encoding e);

/// Image of sum_ij h_ij a_i^dag a_j on N qubits (qubit i occupied = basis state i).
PauliSum encode_onehot_jw(const CMatrix& h);

/// Binary-reflected Gray code word of k.
inline std::uint64_t gray_code(std::uint64_t k) { return k ^ (k >> 1); }

/// Register size used for an N-dimensional Gray-code image: max(1, ceil(log2 N)).
int gray_register_size(int n_states);

/// h zero-padded to 2^n, basis index k placed on computational state gray_code(k).
CMatrix gray_embed(const CMatrix& h);

PauliSum encode_gray(const CMatrix& h);

PauliSum encode(const CMatrix& h, Encoding e);

enum class Side { Right, Left };

/// E-independent pieces of the Hermitianized operator, formed once per H.
class HermitianizedOperator {
public:
    explicit HermitianizedOperator(PauliSum h);

    const PauliSum& h() const { return h_; }
    const PauliSum& h_dagger() const { return h_dagger_; }
    const PauliSum& hdag_h() const { return hdag_h_; }
    const PauliSum& h_hdag() const { return h_hdag_; }
    int n_qubits() const { return h_.n_qubits(); }

    /// Right: H^dag H - E* H - E H^dag + |E|^2.  Left: H H^dag - E H^dag - E* H + |E|^2.
    PauliSum at(Complex e, Side side = Side::Right) const;

private:
    PauliSum h_;
    PauliSum h_dagger_;
    PauliSum hdag_h_;
    PauliSum h_hdag_;
};

PauliSum hermitianize(const PauliSum& h, Complex e, Side side = Side::Right);

}  // namespace qres::encoding
