// Exhaustive reference computations for small instances. Everything here works on raw
// likelihood pairs and enumerates explicitly; nothing is shared with the decoders beyond
// the model description.
#ifndef FRAMESYNC_TESTS_ORACLE_HPP_
#define FRAMESYNC_TESTS_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "framesync/frame_model.hpp"

namespace oracle
{

using framesync::Bit;
using framesync::Bits;
using framesync::FrameModel;
using framesync::HeaderSpec;

/// Remainder of msg(x) * x^width modulo x^width + generator, by polynomial long division.
inline std::uint32_t crc_long_division(const Bits &msg, std::uint32_t generator, int width)
{
	std::vector<int>    poly(msg.begin(), msg.end());
	const std::uint64_t full = (std::uint64_t{1} << width) | generator;
	poly.resize(msg.size() + width, 0);
	for (std::size_t i = 0; i < msg.size(); ++i)
		if (poly[i])
			for (int j = 0; j <= width; ++j)
				poly[i + j] ^= static_cast<int>((full >> (width - j)) & 1u);
	std::uint32_t r = 0;
	for (int j = 0; j < width; ++j)
		r = (r << 1) | static_cast<std::uint32_t>(poly[msg.size() + j]);
	return r;
}

inline void put_bits(Bits &h, int offset, int width, std::uint32_t v)
{
	for (int i = 0; i < width; ++i)
		h[offset + i] = static_cast<Bit>((v >> (width - 1 - i)) & 1u);
}

/// Header for a given LEN value and other-field value, HEC by long division.
inline Bits header(const HeaderSpec &s, std::uint32_t len_value, std::uint32_t other)
{
	Bits h(s.header_bits(), 0);
	for (int i = 0; i < s.constant.width; ++i)
		h[s.constant.offset + i] = s.constant_value[i];
	put_bits(h, s.length.offset, s.length.width, len_value % (1u << s.length.width));
	put_bits(h, s.other.offset, s.other.width, other);
	const Bits covered(h.begin(), h.begin() + s.hec.offset);
	put_bits(h, s.hec.offset, s.hec.width, crc_long_division(covered, s.generator, s.hec.width));
	return h;
}

/// Product of P(y_i | bits_i) over a span starting at bit `at`.
inline double span_lik(const Eigen::ArrayX2d &raw, long at, const Bits &bits)
{
	double p = 1.0;
	for (std::size_t i = 0; i < bits.size(); ++i)
		p *= raw(at + static_cast<long>(i), bits[i]);
	return p;
}

/// Sum over every other-field value o of P(y_header | header(len, o)) 2^-|o|.
inline double header_lik(const HeaderSpec &s, const Eigen::ArrayX2d &raw, long at, int len)
{
	const std::uint32_t count = 1u << s.other.width;
	double              sum   = 0.0;
	for (std::uint32_t o = 0; o < count; ++o)
		sum += span_lik(raw, at, header(s, static_cast<std::uint32_t>(len), o));
	return sum / count;
}

/// Sum over every bit string x on [begin, end) of P(y|x) 2^-len, by enumeration when short.
inline double uniform_lik(const Eigen::ArrayX2d &raw, long begin, long end)
{
	const long n = end - begin;
	if (n <= 12)
	{
		double sum = 0.0;
		for (std::uint32_t x = 0; x < (1u << n); ++x)
		{
			double p = 1.0;
			for (long i = 0; i < n; ++i)
				p *= raw(begin + i, (x >> i) & 1u);
			sum += p;
		}
		return sum / static_cast<double>(1u << n);
	}
	double p = 1.0;
	for (long i = begin; i < end; ++i)
		p *= 0.5 * (raw(i, 0) + raw(i, 1));
	return p;
}

inline double ones_lik(const Eigen::ArrayX2d &raw, long begin, long end)
{
	double p = 1.0;
	for (long i = begin; i < end; ++i)
		p *= raw(i, 1);
	return p;
}

/// Branch weights straight from the model definition.
struct Weights
{
	const FrameModel      &model;
	const Eigen::ArrayX2d &raw;
	int                    origin = 0; ///< unit offset of local position 0

	int  g() const { return model.granularity(); }
	long bit(int unit) const { return static_cast<long>(origin + unit) * g(); }
	double pi(int len) const
	{
		const auto &d = model.lengths;
		return len < d.min_len() || len > d.max_len() ? 0.0 : d.pmf(len);
	}
	double pi_sum(int lo, int hi) const
	{
		double s = 0.0;
		for (int k = lo; k <= hi; ++k)
			s += pi(k);
		return s;
	}

	double frame_lik(int start, int len) const
	{
		const int hb = model.header.header_bits();
		return header_lik(model.header, raw, bit(start), len) * uniform_lik(raw, bit(start) + hb, bit(start + len));
	}

	double data(int prev, int next) const { return pi(next - prev) * frame_lik(prev, next - prev); }

	double last(int prev, int end) const
	{
		const auto &d   = model.lengths;
		const int   gap = end - prev;
		if (gap < 1 || gap > d.max_len())
			return 0.0;
		const double pad  = gap < d.min_len() ? 1.0 : pi_sum(gap + 1, d.max_len());
		double       w    = pad * ones_lik(raw, bit(prev), bit(end));
		if (gap >= d.min_len())
			w += (1.0 - pad) * pi(gap) / pi_sum(d.min_len(), gap) * frame_lik(prev, gap);
		return w;
	}

	double edge(int prev, int end) const
	{
		const auto &d   = model.lengths;
		const int   t   = end - prev;
		const int   hb  = model.header.header_bits();
		if (t < 1 || t > d.max_len())
			return 0.0;
		const double prior = t < d.min_len() ? 1.0 : pi_sum(t, d.max_len());
		if (t * g() < hb)
			return prior * uniform_lik(raw, bit(prev), bit(end));
		double sum = 0.0;
		for (int len = std::max(t, d.min_len()); len <= d.max_len(); ++len)
			sum += pi(len) * header_lik(model.header, raw, bit(prev), len);
		return prior * sum * uniform_lik(raw, bit(prev) + hb, bit(end));
	}
};

struct Enumeration
{
	std::map<std::pair<int, int>, double> node_posterior; ///< (n, local position) -> P(S_n = l | y)
	double                                total = 0.0;    ///< sum of all segmentation weights
	long                                  segmentations = 0;
};

/// Every segmentation of (0, end] into frames, starting at s_0 with weight seed[s_0].
/// `window_edge` selects the truncated-frame rule for the last transition.
inline Enumeration enumerate(const Weights &w, int end, const std::vector<double> &seed, bool window_edge)
{
	const int            dmin = w.model.lengths.min_len();
	const int            dmax = w.model.lengths.max_len();
	Enumeration          out;
	std::vector<int>     path;
	std::vector<std::pair<std::vector<int>, double>> all;

	std::function<void(double)> walk = [&](double weight) {
		const int at = path.back();
		// Close the burst or window here.
		const double close = window_edge ? w.edge(at, end) : w.last(at, end);
		if (close > 0.0)
		{
			auto full = path;
			full.push_back(end);
			all.emplace_back(std::move(full), weight * close);
		}
		for (int d = dmin; d <= dmax && at + d < end; ++d)
		{
			const double step = w.data(at, at + d);
			if (step <= 0.0)
				continue;
			path.push_back(at + d);
			walk(weight * step);
			path.pop_back();
		}
	};
	for (int s0 = 0; s0 < static_cast<int>(seed.size()); ++s0)
	{
		if (seed[s0] <= 0.0)
			continue;
		path = {s0};
		walk(seed[s0]);
	}

	for (const auto &[p, weight] : all)
		out.total += weight;
	for (const auto &[p, weight] : all)
		for (std::size_t n = 0; n < p.size(); ++n)
			out.node_posterior[{static_cast<int>(n), p[n]}] += weight / out.total;
	out.segmentations = static_cast<long>(all.size());
	return out;
}

} // namespace oracle

#endif // FRAMESYNC_TESTS_ORACLE_HPP_
