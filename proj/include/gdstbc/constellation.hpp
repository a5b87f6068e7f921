#pragma once

// Bit-labeled signal constellations and the plan that binds them to a
// code's real symbols. A PAM source feeds one real symbol; a QAM or PSK
// source feeds a (real, imag) pair. Rotation multiplies the complex point
// by e^{j theta} before the split, so a rotated pair is coupled and must be
// detected jointly; an unrotated rectangular QAM factors into two
// independent PAM components.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gdstbc {

enum class ConstellationFamily { pam, qam, psk };

struct Constellation {
    ConstellationFamily family = ConstellationFamily::pam;
    std::size_t size = 0;   // number of points, a power of two
    std::size_t bits = 0;   // log2(size)
    double rotation = 0.0;  // radians, already applied to points
    std::vector<std::complex<double>> points;  // unit mean power
    std::vector<std::uint32_t> labels;         // Gray bit label per point
};

// Uniform levels on the real line, unit mean power. PAM feeds a single
// real symbol, so no rotation is representable.
Constellation make_pam(std::size_t size);

// Square grid when size is an even power of two, otherwise a 2:1
// rectangle (8 -> 4x2). Gray labels concatenate per-axis Gray codes.
Constellation make_qam(std::size_t size, double rotation = 0.0);

Constellation make_psk(std::size_t size, double rotation = 0.0);

// Index of the point carrying a given bit label.
std::size_t point_with_label(const Constellation& c, std::uint32_t label);

// True when the point set is a product of independent per-component value
// grids (PAM always; QAM at zero rotation).
bool factorizes(const Constellation& c);

// Per-component grid of a factorizable constellation: values plus the bit
// width of that component's slice of the label (component 0 = real).
struct ComponentGrid {
    std::vector<double> values;
    std::size_t bits = 0;
};
std::vector<ComponentGrid> component_grids(const Constellation& c);

// Point index holding the given per-component grid indices, inverse to the
// layout component_grids exposes.
std::size_t point_from_axes(const Constellation& c, std::span<const std::size_t> axes);

struct Source {
    Constellation constellation;
    std::vector<std::size_t> symbols;  // 0-based real-symbol indices
};

struct SymbolPlan {
    std::vector<Source> sources;
    std::size_t symbol_count = 0;

    std::size_t total_bits() const;
    std::uint64_t message_count() const;  // product of source sizes
    std::vector<double> second_moments() const;  // E[s_l^2] per real symbol
    // Exact-cover validation; throws std::invalid_argument.
    void check() const;
};

// Write one source's point into the symbol vector.
void apply_point(const Source& src, std::size_t point, std::span<double> s);

// Plan text: whitespace-separated sources "family+size:syms[@angle]" with
// 1-based symbol indices, e.g. "pam4:4 qam8:1,5@0.0735pi qam8:2,3".
// Angles take an optional "pi" suffix.
SymbolPlan parse_plan(const std::string& text, std::size_t symbol_count);
std::string format_plan(const SymbolPlan& plan);

}  // namespace gdstbc
