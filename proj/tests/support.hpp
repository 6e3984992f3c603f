#ifndef FRAMESYNC_TESTS_SUPPORT_HPP_
#define FRAMESYNC_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <doctest.h>

#include "framesync/channel.hpp"
#include "framesync/frame_model.hpp"

namespace doctest
{
template <>
struct StringMaker<std::vector<int>>
{
	static String convert(const std::vector<int> &v)
	{
		std::string out = "{";
		for (std::size_t i = 0; i < v.size(); ++i)
			out += (i ? ", " : "") + std::to_string(v[i]);
		return (out + "}").c_str();
	}
};
} // namespace doctest

namespace testing
{

using namespace framesync;

/// Number of generated cases per property.
inline constexpr int property_cases = 1000;

/// Runs `body(rng, case_index)` for `cases` independently seeded cases; the case index and
/// seed are attached to any failure.
template <class F>
void for_all(std::uint64_t seed, int cases, F &&body)
{
	for (int c = 0; c < cases; ++c)
	{
		std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(c)};
		Rng           rng(seq);
		INFO("property case " << c << " (seed " << seed << ")");
		body(rng, c);
	}
}

/// 3-bit units, frames of 4..10 units, 12-bit header (k2 u4 o3 c3, g = x^3 + x + 1).
inline FrameModel toy_model(int min_len = 4, int max_len = 10)
{
	return FrameModel(HeaderSpec::toy(2, 4, 3, 3, 0x3), LengthDistribution::uniform(min_len, max_len, 3));
}

/// Same layout with a 4-bit HEC (g = x^4 + x + 1): k1 u4 o3 c4.
inline FrameModel toy_model_crc4(int min_len = 4, int max_len = 10)
{
	return FrameModel(HeaderSpec::toy(1, 4, 3, 4, 0x3), LengthDistribution::uniform(min_len, max_len, 3));
}

/// Uniform random raw likelihood pairs in (0.05, 1).
inline Eigen::ArrayX2d random_raw(Rng &rng, Eigen::Index bits)
{
	std::uniform_real_distribution<double> u(0.05, 1.0);
	Eigen::ArrayX2d                        raw(bits, 2);
	for (Eigen::Index i = 0; i < bits; ++i)
	{
		raw(i, 0) = u(rng);
		raw(i, 1) = u(rng);
	}
	return raw;
}

/// Raw Gaussian likelihoods of a transmitted burst.
inline Eigen::ArrayX2d raw_from_channel(const Observation &obs, double sigma2)
{
	Eigen::ArrayX2d raw(obs.size(), 2);
	for (Eigen::Index i = 0; i < obs.size(); ++i)
	{
		raw(i, 0) = bit_likelihood(obs.y(i), obs.a(i), 0, sigma2);
		raw(i, 1) = bit_likelihood(obs.y(i), obs.a(i), 1, sigma2);
	}
	return raw;
}

inline bool close_rel(double a, double b, double rel, double floor = 0.0)
{
	return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + floor;
}

} // namespace testing

#endif // FRAMESYNC_TESTS_SUPPORT_HPP_
