#ifndef FRAMESYNC_BASELINES_HPP_
#define FRAMESYNC_BASELINES_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "framesync/channel.hpp"
#include "framesync/trellis.hpp"

namespace framesync
{

/// Sign decisions: bit 0 iff a*y >= 0.
Bits hard_decide(const Observation &obs);

/// HEC syndromes of low-weight header errors.
class SyndromeTable
{
public:
	explicit SyndromeTable(const HeaderSpec &spec);

	/// Syndrome of a received header (zero for a valid one).
	std::uint32_t syndrome(std::span<const Bit> header) const;

	/// Header bit positions whose single flip produces `syndrome`.
	const std::vector<int> &single(std::uint32_t syndrome) const { return single_[syndrome]; }
	/// Two-bit error patterns producing `syndrome`.
	const std::vector<std::pair<int, int>> &double_errors(std::uint32_t syndrome) const { return double_[syndrome]; }

private:
	const HeaderSpec                              *spec_;
	std::vector<std::vector<int>>                  single_;
	std::vector<std::vector<std::pair<int, int>>> double_;
};

/// Hunt for a header with a valid HEC, follow its LEN field, re-hunt one unit further on
/// failure.
SyncEstimate hunt_sync(std::span<const Bit> bits, const FrameModel &model, int burst_len);

enum class AmbiguityPolicy
{
	uncorrectable,      ///< a syndrome without a unique single-bit explanation drops to HUNT
	validate_candidates ///< try each two-bit candidate, keep the length when all confirmed candidates agree on it
};

struct MuConfig
{
	int             presync_confirmations = 1; ///< headers that must chain from a hunt hit before SYNC
	AmbiguityPolicy policy                = AmbiguityPolicy::uncorrectable;
};

/// HUNT / PRESYNC / SYNC automaton using the HEC for detection and, once in SYNC, for
/// single-bit correction. A header that cannot be explained in SYNC leaves no length to
/// follow, so the automaton returns to HUNT at that position.
SyncEstimate mu_sync(std::span<const Bit> bits, const FrameModel &model, int burst_len, const MuConfig &config = {});

} // namespace framesync

#endif // FRAMESYNC_BASELINES_HPP_
