#ifndef FRAMESYNC_TRELLIS_HPP_
#define FRAMESYNC_TRELLIS_HPP_

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "framesync/channel.hpp"
#include "framesync/frame_model.hpp"

namespace framesync
{

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

/// Raised when a trellis stage carries no probability mass (model mismatch or underflow).
class DecodeFailure : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Likelihood marginalisation over unknown bits. These take raw P(y|0), P(y|1) rows.

/// Product over the rows of (P(y|0) + P(y|1)) / 2: a payload of equally likely bits.
double marginalize_payload(const Eigen::Ref<const Eigen::ArrayX2d> &lik);

/// Sum over the other field o of P(y_o|o) P(y_c|c = f(k,u,o)) 2^-len(o), evaluated with a
/// forward recursion over the 2^width CRC register states. `known_prefix` holds the bits
/// that precede o (the constant and length fields).
///
/// Throws std::domain_error when the row counts do not match the header layout.
double marginalize_other_crc(const HeaderSpec &spec, std::span<const Bit> known_prefix,
                             const Eigen::Ref<const Eigen::ArrayX2d> &other_lik,
                             const Eigen::Ref<const Eigen::ArrayX2d> &crc_lik);

// ---------------------------------------------------------------------------

/// Header likelihood of a candidate frame start for every admissible length, memoised
/// per start position. Uses the linearity of a zero-initialised CRC: the register after
/// k|u|o equals shift^len(o)(reg(k|u)) xor reg(o), so the o-sum is run once per start and
/// reused for every candidate length.
class HeaderScorer
{
public:
	HeaderScorer(const FrameModel &model, const LikelihoodTable &table);

	/// log [ P(y_k|k) P(y_u|u(len)) sum_o P(y_o|o) P(y_c|f(k,u,o)) 2^-len(o) ] for a frame
	/// starting at unit `start`; -inf when `len` is outside [min_len, max_len].
	double log_header(int start, int len);

	/// Number of start positions whose header has been evaluated.
	std::int64_t positions_evaluated() const { return evaluated_; }

private:
	void fill(int start);

	const FrameModel      *model_;
	const LikelihoodTable *table_;
	int                    span_;   // max_len - min_len + 1
	std::vector<double>    cache_;  // [start][len - min_len]
	std::vector<char>      filled_;
	std::int64_t           evaluated_ = 0;

	std::vector<std::uint32_t> len_register_; // register after k|u(len), shifted through len(o) zeros
	std::vector<std::uint32_t> len_field_;    // LEN field value per candidate length
	std::uint32_t              other_mask_ = 0;
	std::vector<std::uint32_t> step_;         // CRC register transition per (state, bit)
	std::vector<double>        reg_, next_;
};

/// Branch metrics of the frame-boundary trellis, in log domain and absolute unit
/// coordinates. All values share the per-bit normalisation of LikelihoodTable.
class BranchMetrics
{
public:
	BranchMetrics(const FrameModel &model, const LikelihoodTable &table);

	const FrameModel &model() const { return *model_; }

	/// Complete data frame occupying (prev, next]; -inf when next - prev is not an
	/// admissible length.
	double log_gamma_data(int prev, int next);

	/// Last transition of a burst ending at `burst_end`: data/padding mixture.
	/// -inf when burst_end - prev is not in [1, max_len].
	double log_gamma_last(int prev, int burst_end);

	/// Frame cut by a window edge with its header fully observed.
	double log_gamma_truncated(int prev, int edge);

	/// Frame cut by a window edge inside its header: the observed bits are treated as
	/// equally likely.
	double log_gamma_header_truncated(int prev, int edge);

	/// Window-edge transition, dispatching on whether the header fits.
	double log_gamma_edge(int prev, int edge);

	/// Components of log_gamma_last: {data term, padding term}, each weighted by its prior.
	std::pair<double, double> log_gamma_last_terms(int prev, int burst_end);

	HeaderScorer &scorer() { return scorer_; }

private:
	double log_payload(int bits) const;

	const FrameModel      *model_;
	const LikelihoodTable *table_;
	HeaderScorer           scorer_;
};

// ---------------------------------------------------------------------------

struct ComplexityCounters
{
	std::int64_t nodes_visited         = 0;
	std::int64_t transitions_evaluated = 0;

	ComplexityCounters &operator+=(const ComplexityCounters &o)
	{
		nodes_visited += o.nodes_visited;
		transitions_evaluated += o.transitions_evaluated;
		return *this;
	}
};

/// How the last trellis column is reached.
enum class EndRule
{
	burst_end,  ///< last frame is a data frame or the padding frame
	window_edge ///< last frame may be truncated by the window edge
};

/// One decode: the trellis over units (origin, origin + end].
struct TrellisProblem
{
	int                 origin = 0;
	int                 end    = 0;
	EndRule             rule   = EndRule::burst_end;
	std::vector<double> seed   = {1.0}; ///< alpha_0 over local positions [0, seed.size())
};

/// Node ranges of the trellis: stage n spans local positions [lo(n), hi(n)].
struct TrellisGeometry
{
	int end        = 0;
	int min_len    = 1;
	int max_len    = 1;
	int seed_width = 1;

	int lo(int n) const;
	int hi(int n) const;
	int last_stage() const;       ///< ceil(end / min_len)
	int first_final_stage() const; ///< first stage whose range reaches end
};

/// Walks the trellis geometry and counts what a decode visits, without evaluating any
/// branch metric.
ComplexityCounters count_trellis(const TrellisGeometry &geometry);

/// Closed-form node count: sum over the two triangular regions of the trellis.
double closed_form_nodes(int burst_len, int min_len, int max_len);

/// Large-L approximation L^2/2 (max - min)/(max min).
double approx_nodes(double burst_len, int min_len, int max_len);

/// Scaled forward/backward tables over the sparse trellis.
///
/// alpha and beta are stored as logs, per stage normalised to sum 1, with the log of the
/// removed factor in alpha_log_scale / beta_log_scale.
class TrellisPosterior
{
public:
	int origin() const { return origin_; }
	int end() const { return geometry_.end; }
	int stages() const { return static_cast<int>(lo_.size()); }
	int lo(int n) const { return lo_[n]; }
	int hi(int n) const { return hi_[n]; }
	int first_final_stage() const { return first_final_; }
	int last_final_stage() const { return last_final_; }
	EndRule rule() const { return rule_; }
	const TrellisGeometry &geometry() const { return geometry_; }

	/// Scaled values in log domain; -inf outside the stage range.
	double log_alpha(int n, int l) const;
	double log_beta(int n, int l) const;
	/// Scaled values; zero outside the stage range (may underflow where the log does not).
	double alpha(int n, int l) const { return std::exp(log_alpha(n, l)); }
	double beta(int n, int l) const { return std::exp(log_beta(n, l)); }
	double alpha_log_scale(int n) const { return alpha_scale_[n]; }
	double beta_log_scale(int n) const { return beta_scale_[n]; }

	/// log P(S_n = l, y) up to the common per-bit normalisation.
	double log_joint(int n, int l) const;
	/// P(S_n = l | y).
	double posterior(int n, int l) const;
	/// log P(y) on the same scale as log_joint.
	double log_evidence() const { return log_evidence_; }

	const ComplexityCounters &counters() const { return counters_; }

private:
	friend TrellisPosterior forward_backward(BranchMetrics &, const TrellisProblem &);

	std::size_t index(int n, int l) const { return offset_[n] + static_cast<std::size_t>(l - lo_[n]); }

	int                      origin_ = 0;
	EndRule                  rule_   = EndRule::burst_end;
	TrellisGeometry          geometry_;
	std::vector<int>         lo_, hi_;
	std::vector<std::size_t> offset_;
	std::vector<double>      alpha_, beta_;
	std::vector<double>      alpha_scale_, beta_scale_;
	int                      first_final_ = 0;
	int                      last_final_  = 0;
	double                   log_evidence_ = 0.0;
	ComplexityCounters       counters_;
};

/// Forward-backward over one trellis. Final states (n, end) for every reachable n are
/// equally likely a priori. Throws DecodeFailure when no path reaches the end.
TrellisPosterior forward_backward(BranchMetrics &metrics, const TrellisProblem &problem);

/// Full-burst decode of a burst of `burst_len` units.
TrellisPosterior forward_backward(const LikelihoodTable &table, const FrameModel &model, int burst_len);

struct SyncEstimate
{
	int              n_hat = 0;
	std::vector<int> boundaries; ///< end of each frame (local to the decoded trellis)
	std::vector<int> lengths;
	int              start           = 0; ///< estimated start of the first frame
	bool             is_padding_last = false;
};

/// MAP frame count over the final column, then per-frame MAP boundaries. Ties (log values
/// within 1e-12 relative) go to the smaller index. The last boundary is the trellis end by construction.
/// `metrics` is only used to label the last frame as padding and may be null.
SyncEstimate estimate(const TrellisPosterior &posterior, BranchMetrics *metrics = nullptr);

/// Full trellis decode plus estimation.
SyncEstimate trellis_sync(const LikelihoodTable &table, const FrameModel &model, int burst_len,
                          ComplexityCounters *counters = nullptr);

/// "n l p" per node with nonzero posterior.
void write_posterior(std::ostream &os, const TrellisPosterior &posterior);

} // namespace framesync

#endif // FRAMESYNC_TRELLIS_HPP_
