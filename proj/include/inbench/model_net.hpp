#pragma once

// Self-contained fusion network: three stride-2 3x3 convs on the image,
// a small MLP on the wrench, concatenated into a fusion head. Templated on
// the scalar so tests can run a float64 shadow for finite-difference checks.

#include <cstring>
#include <vector>

namespace inbench::net {

struct NetDims {
    int in_h = 64, in_w = 64, in_c = 3;
    int c1 = 8, c2 = 16, c3 = 32; // conv channels, 3x3 kernels, stride 2
    int fci = 64;                 // image head
    int wr_in = 6, wr1 = 32, wr2 = 32;
    int fuse = 64;
    int out = 5;

    static int conv_out(int n) { return (n - 3) / 2 + 1; }
    int h1() const { return conv_out(in_h); }
    int w1() const { return conv_out(in_w); }
    int h2() const { return conv_out(h1()); }
    int w2() const { return conv_out(w1()); }
    int h3() const { return conv_out(h2()); }
    int w3() const { return conv_out(w2()); }
    int flat() const { return h3() * w3() * c3; }
    int fuse_in() const { return fci + wr2; }

    bool operator==(const NetDims& o) const {
        return in_h == o.in_h && in_w == o.in_w && in_c == o.in_c && c1 == o.c1 && c2 == o.c2 &&
               c3 == o.c3 && fci == o.fci && wr_in == o.wr_in && wr1 == o.wr1 && wr2 == o.wr2 &&
               fuse == o.fuse && out == o.out;
    }
};

template <typename T>
struct Tensors {
    NetDims dims;
    std::vector<T> conv1_w, conv1_b;
    std::vector<T> conv2_w, conv2_b;
    std::vector<T> conv3_w, conv3_b;
    std::vector<T> fci_w, fci_b;
    std::vector<T> wr1_w, wr1_b;
    std::vector<T> wr2_w, wr2_b;
    std::vector<T> fuse_w, fuse_b;
    std::vector<T> head_w, head_b;

    void resize(const NetDims& d) {
        dims = d;
        conv1_w.assign(static_cast<size_t>(d.c1) * d.in_c * 9, T(0));
        conv1_b.assign(d.c1, T(0));
        conv2_w.assign(static_cast<size_t>(d.c2) * d.c1 * 9, T(0));
        conv2_b.assign(d.c2, T(0));
        conv3_w.assign(static_cast<size_t>(d.c3) * d.c2 * 9, T(0));
        conv3_b.assign(d.c3, T(0));
        fci_w.assign(static_cast<size_t>(d.fci) * d.flat(), T(0));
        fci_b.assign(d.fci, T(0));
        wr1_w.assign(static_cast<size_t>(d.wr1) * d.wr_in, T(0));
        wr1_b.assign(d.wr1, T(0));
        wr2_w.assign(static_cast<size_t>(d.wr2) * d.wr1, T(0));
        wr2_b.assign(d.wr2, T(0));
        fuse_w.assign(static_cast<size_t>(d.fuse) * d.fuse_in(), T(0));
        fuse_b.assign(d.fuse, T(0));
        head_w.assign(static_cast<size_t>(d.out) * d.fuse, T(0));
        head_b.assign(d.out, T(0));
    }

    template <typename F>
    void for_each(F&& f) {
        f("conv1_w", conv1_w); f("conv1_b", conv1_b);
        f("conv2_w", conv2_w); f("conv2_b", conv2_b);
        f("conv3_w", conv3_w); f("conv3_b", conv3_b);
        f("fci_w", fci_w); f("fci_b", fci_b);
        f("wr1_w", wr1_w); f("wr1_b", wr1_b);
        f("wr2_w", wr2_w); f("wr2_b", wr2_b);
        f("fuse_w", fuse_w); f("fuse_b", fuse_b);
        f("head_w", head_w); f("head_b", head_b);
    }
    template <typename F>
    void for_each(F&& f) const {
        const_cast<Tensors*>(this)->for_each([&](const char* n, auto& v) {
            f(n, const_cast<const std::vector<T>&>(v));
        });
    }

    template <typename U>
    Tensors<U> cast() const {
        Tensors<U> o;
        o.resize(dims);
        auto copy = [](const std::vector<T>& a, std::vector<U>& b) {
            for (size_t i = 0; i < a.size(); ++i) b[i] = static_cast<U>(a[i]);
        };
        copy(conv1_w, o.conv1_w); copy(conv1_b, o.conv1_b);
        copy(conv2_w, o.conv2_w); copy(conv2_b, o.conv2_b);
        copy(conv3_w, o.conv3_w); copy(conv3_b, o.conv3_b);
        copy(fci_w, o.fci_w); copy(fci_b, o.fci_b);
        copy(wr1_w, o.wr1_w); copy(wr1_b, o.wr1_b);
        copy(wr2_w, o.wr2_w); copy(wr2_b, o.wr2_b);
        copy(fuse_w, o.fuse_w); copy(fuse_b, o.fuse_b);
        copy(head_w, o.head_w); copy(head_b, o.head_b);
        return o;
    }
};

constexpr double kLeakySlope = 0.1;

// C[M][N] = A[M][K] * B[K][N] (+= when accumulate), all row-major contiguous.
template <typename T>
void gemm(int M, int N, int K, const T* __restrict a, const T* __restrict b, T* __restrict c,
          bool accumulate) {
    if (!accumulate) std::memset(c, 0, sizeof(T) * static_cast<size_t>(M) * N);
    constexpr int NB = 128; // keep the active B tile inside L1
    for (int j0 = 0; j0 < N; j0 += NB) {
        const int j1 = j0 + NB < N ? j0 + NB : N;
        for (int i = 0; i < M; ++i) {
            T* __restrict crow = c + static_cast<size_t>(i) * N;
            const T* __restrict arow = a + static_cast<size_t>(i) * K;
            for (int k = 0; k < K; ++k) {
                const T aik = arow[k];
                const T* __restrict brow = b + static_cast<size_t>(k) * N;
                for (int j = j0; j < j1; ++j) crow[j] += aik * brow[j];
            }
        }
    }
}

// B[N][M] = A[M][N] transposed.
template <typename T>
void transpose(int M, int N, const T* __restrict a, T* __restrict b) {
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j) b[static_cast<size_t>(j) * M + i] = a[static_cast<size_t>(i) * N + j];
}

// Eight-lane strided partial sums: vectorizes without reassociation flags,
// and the summation order is fixed, so results stay reproducible.
template <typename T>
T dot(const T* __restrict a, const T* __restrict b, int n) {
    T lanes[8] = {T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0)};
    int i = 0;
    for (; i + 8 <= n; i += 8)
        for (int l = 0; l < 8; ++l) lanes[l] += a[i + l] * b[i + l];
    T acc = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) +
            ((lanes[4] + lanes[5]) + (lanes[6] + lanes[7]));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

template <typename T>
void axpy(T alpha, const T* __restrict x, T* __restrict y, int n) {
    for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// img: channel-first [C][H][W]; cols: [C*9][oh*ow], stride-2 valid 3x3.
template <typename T>
void im2col(const T* img, int c_in, int h, int w, T* cols) {
    const int oh = NetDims::conv_out(h);
    const int ow = NetDims::conv_out(w);
    const int positions = oh * ow;
    for (int c = 0; c < c_in; ++c) {
        const T* plane = img + static_cast<size_t>(c) * h * w;
        for (int ky = 0; ky < 3; ++ky) {
            for (int kx = 0; kx < 3; ++kx) {
                T* dst = cols + (static_cast<size_t>(c * 9 + ky * 3 + kx)) * positions;
                for (int oy = 0; oy < oh; ++oy) {
                    const T* src = plane + static_cast<size_t>(oy * 2 + ky) * w + kx;
                    for (int ox = 0; ox < ow; ++ox) dst[oy * ow + ox] = src[ox * 2];
                }
            }
        }
    }
}

template <typename T>
void col2im_add(const T* cols, int c_in, int h, int w, T* img) {
    const int oh = NetDims::conv_out(h);
    const int ow = NetDims::conv_out(w);
    const int positions = oh * ow;
    for (int c = 0; c < c_in; ++c) {
        T* plane = img + static_cast<size_t>(c) * h * w;
        for (int ky = 0; ky < 3; ++ky) {
            for (int kx = 0; kx < 3; ++kx) {
                const T* src = cols + (static_cast<size_t>(c * 9 + ky * 3 + kx)) * positions;
                for (int oy = 0; oy < oh; ++oy) {
                    T* dst = plane + static_cast<size_t>(oy * 2 + ky) * w + kx;
                    for (int ox = 0; ox < ow; ++ox) dst[ox * 2] += src[oy * ow + ox];
                }
            }
        }
    }
}

template <typename T>
void leaky_forward(const T* pre, T* act, int n) {
    for (int i = 0; i < n; ++i) act[i] = pre[i] > T(0) ? pre[i] : T(kLeakySlope) * pre[i];
}

template <typename T>
void leaky_backward(const T* pre, const T* dact, T* dpre, int n) {
    for (int i = 0; i < n; ++i) dpre[i] = pre[i] > T(0) ? dact[i] : T(kLeakySlope) * dact[i];
}

// fc: y = W x + b, W row-major [n_out][n_in]
template <typename T>
void fc_forward(const std::vector<T>& w, const std::vector<T>& b, const T* x, T* y, int n_out,
                int n_in) {
    for (int o = 0; o < n_out; ++o) y[o] = b[o] + dot(w.data() + static_cast<size_t>(o) * n_in, x, n_in);
}

template <typename T>
struct Workspace {
    NetDims d;
    // forward activations (single example)
    std::vector<T> img;                    // [C][H][W]
    std::vector<T> cols1, pre1, act1;
    std::vector<T> cols2, pre2, act2;
    std::vector<T> cols3, pre3, act3;
    std::vector<T> fci_pre, fci_act;
    std::vector<T> wr{}, wr1_pre, wr1_act, wr2_pre, wr2_act;
    std::vector<T> fuse_in, fuse_pre, fuse_act;
    std::vector<T> y;
    // backward scratch
    std::vector<T> dy, dfuse_act, dfuse_pre, dfuse_in;
    std::vector<T> dfci_act, dfci_pre, dflat;
    std::vector<T> dwr2_act, dwr2_pre, dwr1_act, dwr1_pre;
    std::vector<T> dact3, dpre3, dcols3, dact2, dpre2, dcols2, dact1, dpre1;
    std::vector<T> cols3t, dpre3t, dcols3t, dpre2t, dcols2t; // GEMM-layout scratch

    void resize(const NetDims& dims) {
        d = dims;
        img.assign(static_cast<size_t>(d.in_c) * d.in_h * d.in_w, T(0));
        const int p1 = d.h1() * d.w1(), p2 = d.h2() * d.w2(), p3 = d.h3() * d.w3();
        cols1.assign(static_cast<size_t>(d.in_c) * 9 * p1, T(0));
        pre1.assign(static_cast<size_t>(d.c1) * p1, T(0));
        act1 = pre1;
        cols2.assign(static_cast<size_t>(d.c1) * 9 * p2, T(0));
        pre2.assign(static_cast<size_t>(d.c2) * p2, T(0));
        act2 = pre2;
        cols3.assign(static_cast<size_t>(d.c2) * 9 * p3, T(0));
        pre3.assign(static_cast<size_t>(d.c3) * p3, T(0));
        act3 = pre3;
        fci_pre.assign(d.fci, T(0));
        fci_act = fci_pre;
        wr.assign(d.wr_in, T(0));
        wr1_pre.assign(d.wr1, T(0));
        wr1_act = wr1_pre;
        wr2_pre.assign(d.wr2, T(0));
        wr2_act = wr2_pre;
        fuse_in.assign(d.fuse_in(), T(0));
        fuse_pre.assign(d.fuse, T(0));
        fuse_act = fuse_pre;
        y.assign(d.out, T(0));
        dy.assign(d.out, T(0));
        dfuse_act.assign(d.fuse, T(0));
        dfuse_pre.assign(d.fuse, T(0));
        dfuse_in.assign(d.fuse_in(), T(0));
        dfci_act.assign(d.fci, T(0));
        dfci_pre.assign(d.fci, T(0));
        dflat.assign(d.flat(), T(0));
        dwr2_act.assign(d.wr2, T(0));
        dwr2_pre.assign(d.wr2, T(0));
        dwr1_act.assign(d.wr1, T(0));
        dwr1_pre.assign(d.wr1, T(0));
        dact3.assign(pre3.size(), T(0));
        dpre3.assign(pre3.size(), T(0));
        dcols3.assign(cols3.size(), T(0));
        dact2.assign(pre2.size(), T(0));
        dpre2.assign(pre2.size(), T(0));
        dcols2.assign(cols2.size(), T(0));
        dact1.assign(pre1.size(), T(0));
        dpre1.assign(pre1.size(), T(0));
        cols3t.assign(cols3.size(), T(0));
        dpre3t.assign(pre3.size(), T(0));
        dcols3t.assign(cols3.size(), T(0));
        dpre2t.assign(pre2.size(), T(0));
        dcols2t.assign(cols2.size(), T(0));
    }
};

// Forward pass; ws.img and ws.wr must hold the normalized inputs.
// Output lands in ws.y (normalized action space).
template <typename T>
void forward_pass(const Tensors<T>& p, Workspace<T>& ws) {
    const NetDims& d = p.dims;
    const int p1 = d.h1() * d.w1(), p2 = d.h2() * d.w2(), p3 = d.h3() * d.w3();

    im2col(ws.img.data(), d.in_c, d.in_h, d.in_w, ws.cols1.data());
    gemm(d.c1, p1, d.in_c * 9, p.conv1_w.data(), ws.cols1.data(), ws.pre1.data(), false);
    for (int oc = 0; oc < d.c1; ++oc)
        for (int i = 0; i < p1; ++i) ws.pre1[static_cast<size_t>(oc) * p1 + i] += p.conv1_b[oc];
    leaky_forward(ws.pre1.data(), ws.act1.data(), d.c1 * p1);

    im2col(ws.act1.data(), d.c1, d.h1(), d.w1(), ws.cols2.data());
    gemm(d.c2, p2, d.c1 * 9, p.conv2_w.data(), ws.cols2.data(), ws.pre2.data(), false);
    for (int oc = 0; oc < d.c2; ++oc)
        for (int i = 0; i < p2; ++i) ws.pre2[static_cast<size_t>(oc) * p2 + i] += p.conv2_b[oc];
    leaky_forward(ws.pre2.data(), ws.act2.data(), d.c2 * p2);

    im2col(ws.act2.data(), d.c2, d.h2(), d.w2(), ws.cols3.data());
    gemm(d.c3, p3, d.c2 * 9, p.conv3_w.data(), ws.cols3.data(), ws.pre3.data(), false);
    for (int oc = 0; oc < d.c3; ++oc)
        for (int i = 0; i < p3; ++i) ws.pre3[static_cast<size_t>(oc) * p3 + i] += p.conv3_b[oc];
    leaky_forward(ws.pre3.data(), ws.act3.data(), d.c3 * p3);

    fc_forward(p.fci_w, p.fci_b, ws.act3.data(), ws.fci_pre.data(), d.fci, d.flat());
    leaky_forward(ws.fci_pre.data(), ws.fci_act.data(), d.fci);

    fc_forward(p.wr1_w, p.wr1_b, ws.wr.data(), ws.wr1_pre.data(), d.wr1, d.wr_in);
    leaky_forward(ws.wr1_pre.data(), ws.wr1_act.data(), d.wr1);
    fc_forward(p.wr2_w, p.wr2_b, ws.wr1_act.data(), ws.wr2_pre.data(), d.wr2, d.wr1);
    leaky_forward(ws.wr2_pre.data(), ws.wr2_act.data(), d.wr2);

    std::memcpy(ws.fuse_in.data(), ws.fci_act.data(), sizeof(T) * d.fci);
    std::memcpy(ws.fuse_in.data() + d.fci, ws.wr2_act.data(), sizeof(T) * d.wr2);
    fc_forward(p.fuse_w, p.fuse_b, ws.fuse_in.data(), ws.fuse_pre.data(), d.fuse, d.fuse_in());
    leaky_forward(ws.fuse_pre.data(), ws.fuse_act.data(), d.fuse);

    fc_forward(p.head_w, p.head_b, ws.fuse_act.data(), ws.y.data(), d.out, d.fuse);
}

// Backward from ws.dy; accumulates parameter gradients into g.
template <typename T>
void backward_pass(const Tensors<T>& p, Workspace<T>& ws, Tensors<T>& g) {
    const NetDims& d = p.dims;
    const int p1 = d.h1() * d.w1(), p2 = d.h2() * d.w2(), p3 = d.h3() * d.w3();

    // head (linear)
    std::fill(ws.dfuse_act.begin(), ws.dfuse_act.end(), T(0));
    for (int o = 0; o < d.out; ++o) {
        g.head_b[o] += ws.dy[o];
        axpy(ws.dy[o], ws.fuse_act.data(), g.head_w.data() + static_cast<size_t>(o) * d.fuse, d.fuse);
        axpy(ws.dy[o], p.head_w.data() + static_cast<size_t>(o) * d.fuse, ws.dfuse_act.data(), d.fuse);
    }

    // fusion fc
    leaky_backward(ws.fuse_pre.data(), ws.dfuse_act.data(), ws.dfuse_pre.data(), d.fuse);
    std::fill(ws.dfuse_in.begin(), ws.dfuse_in.end(), T(0));
    for (int o = 0; o < d.fuse; ++o) {
        g.fuse_b[o] += ws.dfuse_pre[o];
        axpy(ws.dfuse_pre[o], ws.fuse_in.data(),
             g.fuse_w.data() + static_cast<size_t>(o) * d.fuse_in(), d.fuse_in());
        axpy(ws.dfuse_pre[o], p.fuse_w.data() + static_cast<size_t>(o) * d.fuse_in(),
             ws.dfuse_in.data(), d.fuse_in());
    }
    std::memcpy(ws.dfci_act.data(), ws.dfuse_in.data(), sizeof(T) * d.fci);
    std::memcpy(ws.dwr2_act.data(), ws.dfuse_in.data() + d.fci, sizeof(T) * d.wr2);

    // wrench branch
    leaky_backward(ws.wr2_pre.data(), ws.dwr2_act.data(), ws.dwr2_pre.data(), d.wr2);
    std::fill(ws.dwr1_act.begin(), ws.dwr1_act.end(), T(0));
    for (int o = 0; o < d.wr2; ++o) {
        g.wr2_b[o] += ws.dwr2_pre[o];
        axpy(ws.dwr2_pre[o], ws.wr1_act.data(), g.wr2_w.data() + static_cast<size_t>(o) * d.wr1, d.wr1);
        axpy(ws.dwr2_pre[o], p.wr2_w.data() + static_cast<size_t>(o) * d.wr1, ws.dwr1_act.data(), d.wr1);
    }
    leaky_backward(ws.wr1_pre.data(), ws.dwr1_act.data(), ws.dwr1_pre.data(), d.wr1);
    for (int o = 0; o < d.wr1; ++o) {
        g.wr1_b[o] += ws.dwr1_pre[o];
        axpy(ws.dwr1_pre[o], ws.wr.data(), g.wr1_w.data() + static_cast<size_t>(o) * d.wr_in, d.wr_in);
    }

    // image fc down to the flat conv output
    leaky_backward(ws.fci_pre.data(), ws.dfci_act.data(), ws.dfci_pre.data(), d.fci);
    std::fill(ws.dflat.begin(), ws.dflat.end(), T(0));
    for (int o = 0; o < d.fci; ++o) {
        g.fci_b[o] += ws.dfci_pre[o];
        axpy(ws.dfci_pre[o], ws.act3.data(), g.fci_w.data() + static_cast<size_t>(o) * d.flat(),
             d.flat());
        axpy(ws.dfci_pre[o], p.fci_w.data() + static_cast<size_t>(o) * d.flat(), ws.dflat.data(),
             d.flat());
    }

    // conv3: GEMM-shaped gradients (the position dimension is short here, so
    // per-row dot products would spend their time in loop remainders)
    leaky_backward(ws.pre3.data(), ws.dflat.data(), ws.dpre3.data(), d.c3 * p3);
    const int k3 = d.c2 * 9;
    for (int oc = 0; oc < d.c3; ++oc) {
        const T* drow = ws.dpre3.data() + static_cast<size_t>(oc) * p3;
        for (int i = 0; i < p3; ++i) g.conv3_b[oc] += drow[i];
    }
    transpose(k3, p3, ws.cols3.data(), ws.cols3t.data());
    gemm(d.c3, k3, p3, ws.dpre3.data(), ws.cols3t.data(), g.conv3_w.data(), true);
    transpose(d.c3, p3, ws.dpre3.data(), ws.dpre3t.data());
    gemm(p3, k3, d.c3, ws.dpre3t.data(), p.conv3_w.data(), ws.dcols3t.data(), false);
    transpose(p3, k3, ws.dcols3t.data(), ws.dcols3.data());
    std::fill(ws.dact2.begin(), ws.dact2.end(), T(0));
    col2im_add(ws.dcols3.data(), d.c2, d.h2(), d.w2(), ws.dact2.data());

    // conv2
    leaky_backward(ws.pre2.data(), ws.dact2.data(), ws.dpre2.data(), d.c2 * p2);
    for (int oc = 0; oc < d.c2; ++oc) {
        const T* drow = ws.dpre2.data() + static_cast<size_t>(oc) * p2;
        for (int i = 0; i < p2; ++i) g.conv2_b[oc] += drow[i];
        for (int k = 0; k < d.c1 * 9; ++k)
            g.conv2_w[static_cast<size_t>(oc) * d.c1 * 9 + k] +=
                dot(drow, ws.cols2.data() + static_cast<size_t>(k) * p2, p2);
    }
    transpose(d.c2, p2, ws.dpre2.data(), ws.dpre2t.data());
    gemm(p2, d.c1 * 9, d.c2, ws.dpre2t.data(), p.conv2_w.data(), ws.dcols2t.data(), false);
    transpose(p2, d.c1 * 9, ws.dcols2t.data(), ws.dcols2.data());
    std::fill(ws.dact1.begin(), ws.dact1.end(), T(0));
    col2im_add(ws.dcols2.data(), d.c1, d.h1(), d.w1(), ws.dact1.data());

    // conv1 (no need to propagate into the input image)
    leaky_backward(ws.pre1.data(), ws.dact1.data(), ws.dpre1.data(), d.c1 * p1);
    for (int oc = 0; oc < d.c1; ++oc) {
        const T* drow = ws.dpre1.data() + static_cast<size_t>(oc) * p1;
        for (int i = 0; i < p1; ++i) g.conv1_b[oc] += drow[i];
        for (int k = 0; k < d.in_c * 9; ++k)
            g.conv1_w[static_cast<size_t>(oc) * d.in_c * 9 + k] +=
                dot(drow, ws.cols1.data() + static_cast<size_t>(k) * p1, p1);
    }
}

} // namespace inbench::net
