#ifndef FRAMESYNC_FRAME_MODEL_HPP_
#define FRAMESYNC_FRAME_MODEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace framesync
{

using Rng  = std::mt19937_64;
using Bit  = std::uint8_t;
using Bits = std::vector<Bit>;

/// Contiguous bit range inside a header, offsets counted from the first header bit.
struct Field
{
	int offset = 0;
	int width  = 0;

	int end() const { return offset + width; }
};

/// Header syntax: constant field k, length field u, other field o and the HEC field c,
/// laid out in that order. The HEC is a CRC over every header bit that precedes it.
///
/// The length field carries the frame length (header included) in units of the
/// alignment granularity; values wider than the field are reduced modulo 2^width.
struct HeaderSpec
{
	Field         constant;
	Bits          constant_value;
	Field         length;
	Field         other;
	Field         hec;
	std::uint32_t generator = 0; ///< CRC polynomial without the x^width term (x^8+x^2+x+1 -> 0x07)

	int header_bits() const { return hec.end(); }
	int crc_width() const { return hec.width; }
	int covered_bits() const { return hec.offset; }

	/// Throws std::invalid_argument when the layout is not k|u|o|c contiguous.
	void validate() const;

	/// 802.16 generic MAC header: HT/EC/Type/Rsv/CI/EKS/Rsv (13 bits, all zero), LEN (11),
	/// CID (16), HCS (8) with g(x) = x^8 + x^2 + x + 1.
	static HeaderSpec wimax();

	/// Small header for exhaustive tests.
	static HeaderSpec toy(int constant_bits, int length_bits, int other_bits, int crc_bits,
	                      std::uint32_t generator);
};

/// CRC register after shifting `bits` through a zero-initialised register; this is the
/// remainder of bits(x) * x^width divided by the generator. No final inversion.
std::uint32_t crc_remainder(std::span<const Bit> bits, std::uint32_t generator, int width);

/// One step of the CRC shift register.
inline std::uint32_t crc_step(std::uint32_t reg, Bit bit, std::uint32_t generator, int width)
{
	const std::uint32_t mask = (width >= 32) ? 0xFFFFFFFFu : ((1u << width) - 1u);
	const std::uint32_t fb   = ((reg >> (width - 1)) & 1u) ^ (bit & 1u);
	reg                      = (reg << 1) & mask;
	return fb ? (reg ^ generator) : reg;
}

/// Writes `value` MSB first into `width` bits at `out`.
void put_uint(std::span<Bit> out, std::uint32_t value, int width);
std::uint32_t get_uint(std::span<const Bit> in, int width);

/// Frame-length prior pi over [min_len, max_len], lengths counted in units of
/// `granularity` bits.
class LengthDistribution
{
public:
	LengthDistribution(int min_len, int max_len, std::vector<double> pmf, int granularity);

	static LengthDistribution uniform(int min_len, int max_len, int granularity);

	int min_len() const { return min_len_; }
	int max_len() const { return max_len_; }
	int granularity() const { return granularity_; }

	double pmf(int len) const;
	/// Sum of pmf(k) for lo <= k <= hi (clamped to the support).
	double mass(int lo, int hi) const;

	int sample(Rng &rng) const;

private:
	int                 min_len_;
	int                 max_len_;
	int                 granularity_;
	std::vector<double> pmf_;
	std::vector<double> cumulative_; // cumulative_[i] = sum of pmf_[0..i)
};

/// Header syntax plus length prior: everything the decoders know about the source.
struct FrameModel
{
	HeaderSpec         header;
	LengthDistribution lengths;

	FrameModel(HeaderSpec h, LengthDistribution d);

	int granularity() const { return lengths.granularity(); }
	/// Header length rounded up to whole alignment units.
	int header_units() const { return (header.header_bits() + granularity() - 1) / granularity(); }

	/// Byte-aligned generic MAC headers, lengths uniform on [min_bytes, max_bytes].
	static FrameModel wimax(int min_bytes = 50, int max_bytes = 200);
};

/// P(S_n = next | S_{n-1} = prev) for a burst of `burst_len` units.
/// Throws std::domain_error unless 0 <= prev < next <= burst_len.
double transition_prob(int prev, int next, int burst_len, const LengthDistribution &dist);

/// P(P_n = 1 | S_{n-1} = prev): the frame starting after `prev` is the padding frame.
double padding_prob(int prev, int burst_len, const LengthDistribution &dist);

/// A burst of aggregated frames with its ground truth.
struct Burst
{
	Bits             bits;
	int              length_units = 0;
	int              granularity  = 8;
	std::vector<int> boundaries; ///< end unit of each frame, last == length_units
	std::vector<int> lengths;
	bool             padding_present = false;

	int frame_count() const { return static_cast<int>(boundaries.size()); }
	int data_frame_count() const { return frame_count() - (padding_present ? 1 : 0); }
};

/// Fills a burst with frames whose lengths are drawn from `dist` until a draw does not
/// fit; the remainder (if any) becomes a 0xFF padding frame.
Burst generate_burst(Rng &rng, int burst_len, const LengthDistribution &dist, const HeaderSpec &spec);

/// Builds one header carrying `length` in its LEN field and `other` in its other field.
Bits make_header(const HeaderSpec &spec, int length, std::uint32_t other);

/// One line per frame: "<index> <start> <end> <padding 0|1>".
void write_ground_truth(std::ostream &os, const Burst &burst);

} // namespace framesync

#endif // FRAMESYNC_FRAME_MODEL_HPP_
