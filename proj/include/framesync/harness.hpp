#ifndef FRAMESYNC_HARNESS_HPP_
#define FRAMESYNC_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "framesync/baselines.hpp"
#include "framesync/channel.hpp"
#include "framesync/sliding.hpp"
#include "framesync/trellis.hpp"

namespace framesync
{

enum class Method
{
	trellis,
	st,
	mu,
	hard
};

std::string to_string(Method m);
/// Throws ConfigError for an unknown name.
Method parse_method(const std::string &name);
std::vector<Method> parse_methods(const std::string &list);

/// Invalid experiment parameters (CLI exit code 1).
class ConfigError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/// Unreadable or unwritable file (CLI exit code 2).
class IoError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

struct SnrGrid
{
	double min  = 0.0;
	double max  = 12.0;
	double step = 2.0;

	/// min, min + step, ... up to max (inclusive, with a small tolerance).
	std::vector<double> points() const;
};

/// Parses "MIN:MAX:STEP" or a single value.
SnrGrid parse_snr_grid(const std::string &text);

struct ExperimentConfig
{
	int                   burst_len    = 1800;
	int                   min_len      = 50;
	int                   max_len      = 200;
	ChannelKind           channel      = ChannelKind::rayleigh;
	SnrGrid               snr;
	std::vector<Method>   methods      = {Method::trellis, Method::st, Method::mu, Method::hard};
	int                   window_len   = 600;
	std::optional<int>    first_window;
	int                   bursts       = 200;
	std::uint64_t         seed         = 1;
	std::string           out;
	bool                  include_padding = false;
	std::optional<double> sigma2_override;
	MuConfig              mu;

	FrameModel model() const;
	/// Throws ConfigError.
	void validate() const;
};

/// Reads "key = value" lines ('#' starts a comment). Keys mirror the CLI flags:
/// burst-bytes, lmin, lmax, snr, channel, methods, window-bytes, first-window-bytes, bursts,
/// seed, out, include-padding, mu-policy, presync-confirmations.
void apply_config(std::istream &is, ExperimentConfig &config);

struct FrameScore
{
	std::int64_t total = 0;
	std::int64_t wrong = 0;
};

/// A truth frame is right when both of its ends are consecutive boundaries of the estimate.
/// The padding frame only counts when include_padding is set.
FrameScore score_frames(const Burst &truth, const SyncEstimate &est, bool include_padding = false);

struct EFLRPoint
{
	Method       method = Method::trellis;
	double       snr_db = 0.0;
	std::int64_t frames_total = 0;
	std::int64_t frames_wrong = 0;
	double       mean_nodes   = 0.0;
	double       seconds      = 0.0;

	std::vector<FrameScore> trials; ///< per-trial scores, not serialised

	double eflr() const { return frames_total ? double(frames_wrong) / double(frames_total) : 0.0; }
};

/// Random streams of one trial: the burst depends on (seed, trial), the channel on
/// (seed, trial, snr index), so results do not depend on the method subset.
Rng burst_rng(std::uint64_t seed, int trial);
Rng channel_rng(std::uint64_t seed, int trial, int snr_index);

/// Runs every method on the same realisation per trial. A decoder failure counts all frames
/// of that trial as wrong and is reported on `log` when given.
std::vector<EFLRPoint> run_sweep(const ExperimentConfig &config, std::ostream *log = nullptr);

void emit_results(const std::vector<EFLRPoint> &table, std::ostream &os);
/// Throws IoError when the file cannot be written.
void emit_results(const std::vector<EFLRPoint> &table, const std::string &path);
/// Throws std::runtime_error on malformed input.
std::vector<EFLRPoint> parse_results(std::istream &is);

struct ComplexityRow
{
	int          burst_len = 0;
	double       trellis_closed_form = 0.0;
	double       trellis_approx      = 0.0;
	std::int64_t trellis_counted     = 0;
	double       st_measured         = 0.0; ///< mean over the instrumented bursts
	double       gain() const { return trellis_counted / st_measured; }
};

/// Node counts of the full trellis (geometry walk) and of sliding-trellis decodes of
/// noiseless bursts, with windows base_len + nominal overlap.
ComplexityRow complexity_row(int burst_len, const FrameModel &model, int base_len, int bursts, std::uint64_t seed);

} // namespace framesync

#endif // FRAMESYNC_HARNESS_HPP_
