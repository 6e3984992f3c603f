#include "framesync/frame_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace framesync
{

void HeaderSpec::validate() const
{
	if (constant.offset != 0 || length.offset != constant.end() || other.offset != length.end() ||
	    hec.offset != other.end())
		throw std::invalid_argument("header fields must be laid out k|u|o|c contiguously");
	if (constant.width < 0 || length.width < 0 || other.width < 0 || hec.width <= 0)
		throw std::invalid_argument("header field widths must be non-negative and the HEC non-empty");
	if (static_cast<int>(constant_value.size()) != constant.width)
		throw std::invalid_argument("constant field value does not match its width");
	if (hec.width > 24)
		throw std::invalid_argument("HEC wider than 24 bits is not supported");
	if (other.width > 24)
		throw std::invalid_argument("other field wider than 24 bits is not supported");
	if (generator >> hec.width)
		throw std::invalid_argument("generator has terms above x^(width-1)");
}

HeaderSpec HeaderSpec::wimax()
{
	HeaderSpec s;
	s.constant       = {0, 13};
	s.constant_value = Bits(13, 0);
	s.length         = {13, 11};
	s.other          = {24, 16};
	s.hec            = {40, 8};
	s.generator      = 0x07;
	return s;
}

HeaderSpec HeaderSpec::toy(int constant_bits, int length_bits, int other_bits, int crc_bits,
                           std::uint32_t generator)
{
	HeaderSpec s;
	s.constant       = {0, constant_bits};
	s.constant_value = Bits(constant_bits, 0);
	for (int i = 0; i < constant_bits; i += 2)
		s.constant_value[i] = 1;
	s.length    = {constant_bits, length_bits};
	s.other     = {s.length.end(), other_bits};
	s.hec       = {s.other.end(), crc_bits};
	s.generator = generator;
	s.validate();
	return s;
}

std::uint32_t crc_remainder(std::span<const Bit> bits, std::uint32_t generator, int width)
{
	std::uint32_t reg = 0;
	for (Bit b : bits)
		reg = crc_step(reg, b, generator, width);
	return reg;
}

void put_uint(std::span<Bit> out, std::uint32_t value, int width)
{
	for (int i = 0; i < width; ++i)
		out[i] = static_cast<Bit>((value >> (width - 1 - i)) & 1u);
}

std::uint32_t get_uint(std::span<const Bit> in, int width)
{
	std::uint32_t v = 0;
	for (int i = 0; i < width; ++i)
		v = (v << 1) | (in[i] & 1u);
	return v;
}

// ---------------------------------------------------------------------------

LengthDistribution::LengthDistribution(int min_len, int max_len, std::vector<double> pmf, int granularity)
    : min_len_(min_len), max_len_(max_len), granularity_(granularity), pmf_(std::move(pmf))
{
	if (min_len < 1 || max_len < min_len)
		throw std::invalid_argument("length bounds must satisfy 1 <= min <= max");
	if (granularity < 1)
		throw std::invalid_argument("granularity must be positive");
	if (static_cast<int>(pmf_.size()) != max_len - min_len + 1)
		throw std::invalid_argument("pmf size does not match [min, max]");
	double total = 0.0;
	for (double p : pmf_)
	{
		if (!(p > 0.0))
			throw std::invalid_argument("pmf must be strictly positive on [min, max]");
		total += p;
	}
	if (std::abs(total - 1.0) > 1e-9)
		throw std::invalid_argument("pmf must sum to 1");
	cumulative_.resize(pmf_.size() + 1, 0.0);
	std::partial_sum(pmf_.begin(), pmf_.end(), cumulative_.begin() + 1);
}

LengthDistribution LengthDistribution::uniform(int min_len, int max_len, int granularity)
{
	const int n = max_len - min_len + 1;
	return LengthDistribution(min_len, max_len, std::vector<double>(std::max(n, 0), 1.0 / n), granularity);
}

double LengthDistribution::pmf(int len) const
{
	if (len < min_len_ || len > max_len_)
		return 0.0;
	return pmf_[len - min_len_];
}

double LengthDistribution::mass(int lo, int hi) const
{
	lo = std::max(lo, min_len_);
	hi = std::min(hi, max_len_);
	if (lo > hi)
		return 0.0;
	return cumulative_[hi - min_len_ + 1] - cumulative_[lo - min_len_];
}

int LengthDistribution::sample(Rng &rng) const
{
	std::uniform_real_distribution<double> u(0.0, 1.0);
	const double r  = u(rng) * cumulative_.back();
	const auto   it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), r);
	const auto   i  = std::min<std::ptrdiff_t>(it - cumulative_.begin() - 1, pmf_.size() - 1);
	return min_len_ + static_cast<int>(i);
}

FrameModel::FrameModel(HeaderSpec h, LengthDistribution d) : header(std::move(h)), lengths(std::move(d))
{
	header.validate();
	if (header.header_bits() > lengths.min_len() * lengths.granularity())
		throw std::invalid_argument("minimum frame length cannot hold the header");
}

FrameModel FrameModel::wimax(int min_bytes, int max_bytes)
{
	return FrameModel(HeaderSpec::wimax(), LengthDistribution::uniform(min_bytes, max_bytes, 8));
}

// ---------------------------------------------------------------------------

double transition_prob(int prev, int next, int burst_len, const LengthDistribution &dist)
{
	if (prev < 0 || next <= prev || next > burst_len)
		throw std::domain_error("transition_prob requires 0 <= prev < next <= L");
	const int gap = next - prev;
	if (next < burst_len)
		return dist.pmf(gap);
	if (gap > dist.max_len())
		return 0.0;
	if (gap < dist.min_len())
		return 1.0;
	return dist.mass(gap, dist.max_len());
}

double padding_prob(int prev, int burst_len, const LengthDistribution &dist)
{
	if (prev < 0 || prev >= burst_len)
		throw std::domain_error("padding_prob requires 0 <= prev < L");
	const int gap = burst_len - prev;
	if (gap >= dist.max_len())
		return 0.0;
	if (gap < dist.min_len())
		return 1.0;
	return dist.mass(gap + 1, dist.max_len());
}

// ---------------------------------------------------------------------------

Bits make_header(const HeaderSpec &spec, int length, std::uint32_t other)
{
	Bits h(spec.header_bits(), 0);
	std::copy(spec.constant_value.begin(), spec.constant_value.end(), h.begin() + spec.constant.offset);
	const std::uint32_t len_mask = spec.length.width >= 32 ? 0xFFFFFFFFu : ((1u << spec.length.width) - 1u);
	put_uint(std::span(h).subspan(spec.length.offset, spec.length.width), static_cast<std::uint32_t>(length) & len_mask,
	         spec.length.width);
	put_uint(std::span(h).subspan(spec.other.offset, spec.other.width), other, spec.other.width);
	const auto crc = crc_remainder(std::span<const Bit>(h).first(spec.covered_bits()), spec.generator, spec.hec.width);
	put_uint(std::span(h).subspan(spec.hec.offset, spec.hec.width), crc, spec.hec.width);
	return h;
}

Burst generate_burst(Rng &rng, int burst_len, const LengthDistribution &dist, const HeaderSpec &spec)
{
	const int g = dist.granularity();
	if (burst_len < dist.min_len())
		throw std::invalid_argument("burst shorter than the minimum frame length");
	if (spec.header_bits() > dist.min_len() * g)
		throw std::invalid_argument("minimum frame length cannot hold the header");

	Burst b;
	b.length_units = burst_len;
	b.granularity  = g;
	b.bits.reserve(static_cast<std::size_t>(burst_len) * g);

	std::uniform_int_distribution<std::uint32_t> other_dist(
	    0, spec.other.width == 0 ? 0u : static_cast<std::uint32_t>((1ull << spec.other.width) - 1));
	std::bernoulli_distribution coin(0.5);

	int pos = 0;
	while (pos < burst_len)
	{
		const int remaining = burst_len - pos;
		const int len       = dist.sample(rng);
		if (len > remaining)
		{
			b.bits.insert(b.bits.end(), static_cast<std::size_t>(remaining) * g, Bit{1});
			b.boundaries.push_back(burst_len);
			b.lengths.push_back(remaining);
			b.padding_present = true;
			break;
		}
		const Bits header = make_header(spec, len, other_dist(rng));
		b.bits.insert(b.bits.end(), header.begin(), header.end());
		for (int i = spec.header_bits(); i < len * g; ++i)
			b.bits.push_back(static_cast<Bit>(coin(rng)));
		pos += len;
		b.boundaries.push_back(pos);
		b.lengths.push_back(len);
	}
	return b;
}

void write_ground_truth(std::ostream &os, const Burst &burst)
{
	int start = 0;
	for (int i = 0; i < burst.frame_count(); ++i)
	{
		const bool pad = burst.padding_present && i + 1 == burst.frame_count();
		os << i << ' ' << start << ' ' << burst.boundaries[i] << ' ' << (pad ? 1 : 0) << '\n';
		start = burst.boundaries[i];
	}
}

} // namespace framesync
