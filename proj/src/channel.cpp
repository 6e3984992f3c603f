#include "framesync/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace framesync
{

double ChannelConfig::sigma2() const
{
	const double s2 = sigma2_override ? *sigma2_override : 1.0 / (2.0 * std::pow(10.0, snr_db / 10.0));
	if (!std::isfinite(s2) || !(s2 > 0.0))
		throw std::invalid_argument("noise variance must be finite and positive");
	return s2;
}

Observation transmit(std::span<const Bit> bits, const ChannelConfig &config, Rng &rng)
{
	const double sigma = std::sqrt(config.sigma2());
	const auto   n     = static_cast<Eigen::Index>(bits.size());

	Observation obs;
	obs.y.resize(n);
	obs.a.setOnes(n);

	std::normal_distribution<double> noise(0.0, sigma);
	if (config.kind == ChannelKind::rayleigh)
	{
		// |h| with h ~ CN(0, 1): E[a^2] = 1.
		std::normal_distribution<double> component(0.0, std::sqrt(0.5));
		for (Eigen::Index i = 0; i < n; ++i)
		{
			const double re = component(rng);
			const double im = component(rng);
			obs.a(i)        = std::hypot(re, im);
		}
	}
	for (Eigen::Index i = 0; i < n; ++i)
		obs.y(i) = obs.a(i) * bpsk(bits[i]) + noise(rng);
	return obs;
}

double bit_likelihood(double y, double a, Bit bit, double sigma2)
{
	const double d = y - a * bpsk(bit);
	return std::exp(-d * d / (2.0 * sigma2)) / std::sqrt(2.0 * std::numbers::pi * sigma2);
}

// ---------------------------------------------------------------------------

namespace
{

// Normalised log pair from unnormalised log-likelihoods.
inline void normalise_logs(double l0, double l1, double &out0, double &out1)
{
	const double hi = std::max(l0, l1);
	const double lo = std::min(l0, l1);
	const double z  = hi + std::log1p(std::exp(lo - hi));
	out0            = l0 - z;
	out1            = l1 - z;
}

} // namespace

LikelihoodTable::LikelihoodTable(const Eigen::ArrayX2d &raw)
{
	const Eigen::Index n = raw.rows();
	log_prob_.resize(n, 2);
	for (Eigen::Index i = 0; i < n; ++i)
	{
		const double p0 = raw(i, 0);
		const double p1 = raw(i, 1);
		if (!(p0 >= 0.0) || !(p1 >= 0.0) || !(p0 + p1 > 0.0))
			throw std::invalid_argument("likelihood rows must be non-negative with positive sum");
		log_prob_(i, 0) = std::log(p0 / (p0 + p1));
		log_prob_(i, 1) = std::log(p1 / (p0 + p1));
	}
	finish();
}

LikelihoodTable LikelihoodTable::from_log_likelihoods(const Eigen::ArrayX2d &log_lik)
{
	LikelihoodTable t;
	t.log_prob_.resize(log_lik.rows(), 2);
	for (Eigen::Index i = 0; i < log_lik.rows(); ++i)
		normalise_logs(log_lik(i, 0), log_lik(i, 1), t.log_prob_(i, 0), t.log_prob_(i, 1));
	t.finish();
	return t;
}

LikelihoodTable LikelihoodTable::from_observation(const Observation &obs, double sigma2)
{
	if (!(sigma2 > 0.0))
		throw std::invalid_argument("sigma2 must be positive");
	Eigen::ArrayX2d ll(obs.size(), 2);
	// The Gaussian normalisation is common to both hypotheses and dropped.
	ll.col(0) = -(obs.y - obs.a).square() / (2.0 * sigma2);
	ll.col(1) = -(obs.y + obs.a).square() / (2.0 * sigma2);
	return from_log_likelihoods(ll);
}

void LikelihoodTable::finish()
{
	prob_ = log_prob_.exp();
	ones_prefix_.resize(log_prob_.rows() + 1);
	ones_impossible_.resize(log_prob_.rows() + 1);
	ones_prefix_(0)     = 0.0;
	ones_impossible_(0) = 0;
	for (Eigen::Index i = 0; i < log_prob_.rows(); ++i)
	{
		const double l          = log_prob_(i, 1);
		const bool   impossible = !std::isfinite(l);
		ones_prefix_(i + 1)     = ones_prefix_(i) + (impossible ? 0.0 : l);
		ones_impossible_(i + 1) = ones_impossible_(i) + (impossible ? 1 : 0);
	}
}

double LikelihoodTable::log_ones(Eigen::Index begin, Eigen::Index end) const
{
	if (ones_impossible_(end) != ones_impossible_(begin))
		return -std::numeric_limits<double>::infinity();
	return ones_prefix_(end) - ones_prefix_(begin);
}

double LikelihoodTable::log_uniform_span(Eigen::Index begin, Eigen::Index end)
{
	return -static_cast<double>(end - begin) * std::numbers::ln2;
}

} // namespace framesync
