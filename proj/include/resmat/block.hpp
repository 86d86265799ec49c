#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "resmat/graph.hpp"
#include "resmat/linalg.hpp"

namespace resmat {

// Square matrix of n x n blocks, each k x k, stored as one dense nk x nk
// matrix. Block (i,j) is the k x k window at (i*k, j*k).
class BlockMatrix {
public:
    BlockMatrix() = default;
    BlockMatrix(int blocks, int block_order);
    BlockMatrix(int blocks, int block_order, Matrix dense);

    int blocks() const { return n_; }
    int block_order() const { return k_; }
    int dim() const { return n_ * k_; }

    auto block(int i, int j) { return dense_.block(i * k_, j * k_, k_, k_); }
    auto block(int i, int j) const { return dense_.block(i * k_, j * k_, k_, k_); }

    Matrix& dense() { return dense_; }
    const Matrix& dense() const { return dense_; }

private:
    int n_ = 0;
    int k_ = 0;
    Matrix dense_;
};

// Blockwise product: result block (i,j) is A_ij * B_ij (a k x k matrix
// product per block, not a full matrix product).
BlockMatrix boxtimes(const BlockMatrix& a, const BlockMatrix& b);

// Sum of all n^2 blocks.
Matrix block_total(const BlockMatrix& m);

// Sum of the n diagonal blocks.
Matrix block_trace(const BlockMatrix& m);

// Swaps block (i,j) with block (j,i); block contents are not transposed.
BlockMatrix block_transpose(const BlockMatrix& m);

// J_n tensor I_k: the all-ones block pattern with identity blocks.
Matrix ones_blocks(int n, int k);

// Connected graph whose edges carry symmetric positive definite k x k
// weight matrices, aligned with graph.edges.
struct MWGraph {
    Graph graph;
    int block_order = 1;
    std::vector<Matrix> weights;

    const Matrix& weight(int i, int j) const;
};

MWGraph make_mwgraph(Graph graph, int block_order, std::vector<Matrix> weights);

// DomainError unless w is symmetric with smallest eigenvalue above
// 1e-12 times the largest.
void require_positive_definite(const Matrix& w);

// Block Laplacian: L_ij = -W_ij^-1 on edges, L_ii = sum of incident W^-1.
BlockMatrix block_laplacian(const MWGraph& g);

// x = (L + (1/n) J tensor I)^-1 and the Moore-Penrose inverse
// lplus = x - (1/n) J tensor I derived from it.
struct BlockPseudoinverse {
    BlockMatrix x;
    BlockMatrix lplus;
};

BlockPseudoinverse block_pinv(const MWGraph& g);

// R_ij = X_ii + X_jj - X_ij - X_ji, cross-checked against the same
// expression in lplus blocks. Diagonal blocks are exactly zero.
BlockMatrix block_resistance(const MWGraph& g);

// Kf = n * sum of diagonal lplus blocks, cross-checked against half the
// total of all resistance blocks. Symmetric k x k.
Matrix block_kirchhoff(const MWGraph& g);

// Deviation of ||L boxtimes R|| from -2(n-1) I_k.
double lr_identity_residual(const MWGraph& g);

// tau_i = 2 I_k + sum over neighbors j of L_ij R_ij; the tau_i sum to 2 I_k.
std::vector<Matrix> tau(const MWGraph& g);

// For a tree: the (1)-inverse [[L(u)^-1, 0], [0, 0]] with u the last vertex.
BlockMatrix tree_one_inverse(const MWGraph& g);

// Resistance computed from the (1)-inverse instead of the Moore-Penrose
// route; defined for trees, used to cross-check block_resistance.
BlockMatrix block_resistance_via_one_inverse(const MWGraph& g);

// Inverts block_resistance for trees: recover the bottleneck matrix at the
// last vertex from B_ij = (R_iu + R_ju - R_ij) / 2, invert, complete the
// Laplacian by zero block-row sums, and read edges and weights off it.
MWGraph reconstruct_tree(const BlockMatrix& r);

// Text format: '#' comments, header "n m k", then per edge a line "i j"
// (1-based) followed by k rows of k weight entries.
MWGraph parse_mwgraph(std::string_view text);
std::string format_mwgraph(const MWGraph& g);

// Text format: header "n k", then n*k rows of n*k entries.
BlockMatrix parse_block_resistance(std::string_view text);

} // namespace resmat
