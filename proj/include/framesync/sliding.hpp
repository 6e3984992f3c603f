#ifndef FRAMESYNC_SLIDING_HPP_
#define FRAMESYNC_SLIDING_HPP_

#include <iosfwd>
#include <optional>
#include <vector>

#include "framesync/trellis.hpp"

namespace framesync
{

/// Window layout of the sliding trellis.
///
/// Window m covers (eps_{m-1}, edge_m] where eps_{m-1} is the last boundary committed by
/// the previous window (only known at run time). The right edges are fixed in advance:
/// edge_0 = first_len and edge_m = edge_{m-1} + base_len, i.e. each window is base_len
/// plus its realised overlap with the previous one. The last window ends at the burst end.
struct WindowPlan
{
	int burst_len  = 0;
	int base_len   = 0;
	int first_len  = 0;
	int min_window = 0; ///< header_units + 2 max_len
	int min_overlap = 0; ///< header_units + max_len
	int max_overlap = 0; ///< header_units + 2 max_len (exclusive)

	int window_count() const;
	int right_edge(int m) const;
};

/// Throws std::invalid_argument when base_len or first_len is below header + 2 max_len.
WindowPlan plan_windows(int burst_len, int base_len, const FrameModel &model,
                        std::optional<int> first_len = std::nullopt);

/// First window length used for the complexity table: base plus the nominal average
/// overlap header + 1.5 max_len.
int nominal_first_window(int base_len, const FrameModel &model);

struct SeedResult
{
	std::vector<double> seed;     ///< alpha_0 of the next window, sums to 1
	bool                fallback = false; ///< propagated values were all zero
};

/// Carries alpha from stage n_reliable of the previous window into alpha_0 of the next:
/// seed(l) = kappa * alpha_{n_reliable}(shift + l) for l in [0, max_len), where shift is
/// the local position of the last committed boundary. Trailing zeros are dropped.
SeedResult seed_alpha(const TrellisPosterior &prev, int n_reliable, int shift, int max_len);

struct ReliablePrefix
{
	int              n_reliable = 0;
	std::vector<int> committed; ///< local boundaries
};

/// Leading frames of a window estimate that end at or before window_len - max_len -
/// header_units. The prefix stops at the first boundary that does not advance. The final
/// window commits its estimate unchanged, so a single-window plan equals the full trellis.
ReliablePrefix reliable_prefix(const SyncEstimate &est, int window_len, const FrameModel &model, bool final_window);

struct WindowDiagnostics
{
	int                index     = 0;
	int                start     = 0; ///< eps_{m-1}
	int                size      = 0;
	int                overlap   = 0; ///< with the next window, 0 for the last
	int                n_hat     = 0;
	int                n_reliable = 0;
	int                seed_width = 1;
	bool               forced_progress = false;
	bool               seed_fallback   = false;
	std::vector<int>   committed; ///< global boundaries
	ComplexityCounters counters;
};

struct SlidingResult
{
	SyncEstimate                   estimate; ///< global coordinates
	std::vector<WindowDiagnostics> windows;
	ComplexityCounters             counters;
};

/// Sliding-trellis frame synchronisation over a whole burst.
SlidingResult sliding_sync(const LikelihoodTable &table, const FrameModel &model, const WindowPlan &plan);

/// One line per window for audit logs.
void write_window_log(std::ostream &os, const std::vector<WindowDiagnostics> &windows);

} // namespace framesync

#endif // FRAMESYNC_SLIDING_HPP_
