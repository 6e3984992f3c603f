#ifndef FRAMESYNC_CHANNEL_HPP_
#define FRAMESYNC_CHANNEL_HPP_

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "framesync/frame_model.hpp"

namespace framesync
{

enum class ChannelKind
{
	awgn,
	rayleigh
};

/// BPSK over AWGN or fast (per-bit) Rayleigh fading.
/// SNR is Es/N0 with Es = 1 and N0 = 2 sigma^2, so sigma^2 = 1 / (2 * 10^(snr_db/10)).
struct ChannelConfig
{
	ChannelKind           kind   = ChannelKind::awgn;
	double                snr_db = 10.0;
	std::optional<double> sigma2_override; ///< used verbatim when set

	double sigma2() const;
};

/// Symbol for a bit: 0 -> +1, 1 -> -1.
inline double bpsk(Bit b) { return b ? -1.0 : 1.0; }

/// Per-bit channel outputs y and fading amplitudes a (all ones for AWGN).
struct Observation
{
	Eigen::ArrayXd y;
	Eigen::ArrayXd a;

	Eigen::Index size() const { return y.size(); }
};

Observation transmit(std::span<const Bit> bits, const ChannelConfig &config, Rng &rng);

/// Gaussian density p(y | bit) with known fading amplitude.
double bit_likelihood(double y, double a, Bit bit, double sigma2);

/// Per-bit likelihood table shared by the soft decoders.
///
/// Each row is stored normalised so that P(y|0) + P(y|1) = 1. Every segmentation of a
/// burst covers every bit exactly once, so the dropped per-bit factor is common to all
/// hypotheses and cancels in every posterior.
class LikelihoodTable
{
public:
	LikelihoodTable() = default;

	/// From raw likelihood pairs, column 0 = P(y|0), column 1 = P(y|1). Rows must be
	/// non-negative with a positive sum.
	explicit LikelihoodTable(const Eigen::ArrayX2d &raw);

	static LikelihoodTable from_observation(const Observation &obs, double sigma2);
	static LikelihoodTable from_log_likelihoods(const Eigen::ArrayX2d &log_lik);

	Eigen::Index size() const { return prob_.rows(); }

	/// Normalised P(y_i | bit).
	double prob(Eigen::Index i, Bit bit) const { return prob_(i, bit); }
	double log_prob(Eigen::Index i, Bit bit) const { return log_prob_(i, bit); }

	const Eigen::ArrayX2d &probs() const { return prob_; }

	/// Sum of log P(y_i | 1) over [begin, end): the log-likelihood of an all-ones span.
	double log_ones(Eigen::Index begin, Eigen::Index end) const;

	/// log sum_x P(y|x) 2^-len over [begin, end) (= -len * ln 2 after normalisation).
	static double log_uniform_span(Eigen::Index begin, Eigen::Index end);

private:
	void finish();

	Eigen::ArrayX2d prob_;
	Eigen::ArrayX2d log_prob_;
	Eigen::ArrayXd  ones_prefix_;     // finite part of the running sum
	Eigen::ArrayXi  ones_impossible_; // running count of bits with P(y|1) = 0
};

} // namespace framesync

#endif // FRAMESYNC_CHANNEL_HPP_
