#pragma once

// Floating-point encode/decode path. The encoder scales dispersion
// matrices so the average transmit energy per block equals T; the
// real-equivalent channel stacks, per receive antenna, the real parts of
// the received block over the imaginary parts, giving a 2TM x L real
// matrix whose cross-group columns are orthogonal for every channel
// draw when the code is group decodable.

#include "gdstbc/code_model.hpp"
#include "gdstbc/constellation.hpp"

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace gdstbc {

struct FloatComplexMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::complex<double>> a;
    FloatComplexMatrix() = default;
    FloatComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const std::complex<double>& at(std::size_t r, std::size_t c) const {
        return a[r * cols + c];
    }
};

struct FloatRealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;
    FloatRealMatrix() = default;
    FloatRealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const double& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// Flat-fading channel for one block: htilde is N x M (transmit x receive),
// rho is the signal-to-noise ratio the receiver assumes.
struct ChannelRealization {
    FloatComplexMatrix htilde;
    double rho = 1.0;
};

struct RealEquivalentChannel {
    FloatRealMatrix h;  // 2TM x L, energy factor included
    double rho = 1.0;
};

class Encoder {
  public:
    Encoder(GroupDecodableCode code, SymbolPlan plan);

    double energy_factor() const { return alpha_; }
    FloatComplexMatrix encode(std::span<const double> s) const;
    RealEquivalentChannel real_equivalent(const ChannelRealization& ch) const;

    const GroupDecodableCode& code() const { return code_; }
    const SymbolPlan& plan() const { return plan_; }

  private:
    GroupDecodableCode code_;
    SymbolPlan plan_;
    std::vector<FloatComplexMatrix> mats_;  // dispersion matrices as doubles
    double alpha_ = 0.0;
};

FloatComplexMatrix encode(const GroupDecodableCode& code, const SymbolPlan& plan,
                          std::span<const double> s);
RealEquivalentChannel real_equivalent(const GroupDecodableCode& code,
                                      const SymbolPlan& plan,
                                      const ChannelRealization& ch);
double energy_factor(const GroupDecodableCode& code, const SymbolPlan& plan);

struct DecodeResult {
    std::vector<std::size_t> points;  // chosen point index per source
    std::vector<double> s;            // the corresponding real symbols
};

struct DecodeStats {
    std::size_t visited = 0;  // candidate assignments examined
};

// Minimizes ||r - sqrt(rho) H s||^2 over the full message set by Gray-coded
// enumeration with incremental metric updates. Refuses plans beyond 2^24
// messages. Ties break toward the lexicographically smallest s.
DecodeResult ml_decode_exhaustive(const RealEquivalentChannel& ch,
                                  std::span<const double> r, const SymbolPlan& plan,
                                  DecodeStats* stats = nullptr);

// One independently decodable piece: the union of symbol groups linked by
// sources that straddle them. Quantized sources sit inside the QOC cliques
// of their groups and separate from everything else conditioned on the
// jointly searched ones.
struct DecodingCell {
    std::vector<std::size_t> groups;
    std::vector<std::size_t> joint_sources;
    std::vector<std::size_t> quantized_sources;
};

class GroupDecoder {
  public:
    // Verifies the code once and precomputes cells; throws
    // std::invalid_argument when verification fails or the plan does not
    // match the code.
    GroupDecoder(GroupDecodableCode code, SymbolPlan plan);

    DecodeResult decode(const RealEquivalentChannel& ch, std::span<const double> r,
                        DecodeStats* stats = nullptr) const;

    const std::vector<DecodingCell>& cells() const { return cells_; }
    const GroupDecodableCode& code() const { return code_; }
    const SymbolPlan& plan() const { return plan_; }

  private:
    struct Prep;  // precomputed cell scan tables
    GroupDecodableCode code_;
    SymbolPlan plan_;
    std::vector<DecodingCell> cells_;
    std::vector<char> zero_gram_;  // L x L flat: entry provably zero
    std::shared_ptr<const Prep> prep_;
};

DecodeResult group_decode(const RealEquivalentChannel& ch, std::span<const double> r,
                          const GroupDecodableCode& code, const SymbolPlan& plan,
                          DecodeStats* stats = nullptr);

}  // namespace gdstbc
