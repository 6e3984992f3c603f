#include "framesync/baselines.hpp"

#include <algorithm>
#include <optional>

namespace framesync
{

Bits hard_decide(const Observation &obs)
{
	Bits out(obs.size());
	for (Eigen::Index i = 0; i < obs.size(); ++i)
		out[i] = obs.a(i) * obs.y(i) >= 0.0 ? 0 : 1;
	return out;
}

SyndromeTable::SyndromeTable(const HeaderSpec &spec) : spec_(&spec)
{
	const std::size_t states = std::size_t{1} << spec.hec.width;
	single_.resize(states);
	double_.resize(states);

	const int hb = spec.header_bits();
	Bits      e(hb, 0);
	std::vector<std::uint32_t> unit(hb);
	for (int i = 0; i < hb; ++i)
	{
		e[i]    = 1;
		unit[i] = syndrome(e);
		e[i]    = 0;
		single_[unit[i]].push_back(i);
	}
	for (int i = 0; i < hb; ++i)
		for (int j = i + 1; j < hb; ++j)
			double_[unit[i] ^ unit[j]].emplace_back(i, j);
}

std::uint32_t SyndromeTable::syndrome(std::span<const Bit> header) const
{
	const auto &s = *spec_;
	return crc_remainder(header.first(s.covered_bits()), s.generator, s.hec.width) ^
	       get_uint(header.subspan(s.hec.offset, s.hec.width), s.hec.width);
}

namespace
{

class BoundaryList
{
public:
	void add(int b)
	{
		if (b > 0 && (list_.empty() || b > list_.back()))
			list_.push_back(b);
	}

	/// End of the last frame announced by a header.
	void mark_frame_end(int end) { headed_end_ = end; }

	/// The tail after the last announced frame is reported as padding.
	SyncEstimate finish(int burst_len)
	{
		add(burst_len);
		SyncEstimate est;
		est.boundaries = list_;
		est.n_hat      = static_cast<int>(list_.size());
		int prev       = 0;
		for (int b : list_)
		{
			est.lengths.push_back(b - prev);
			prev = b;
		}
		est.is_padding_last = headed_end_ < burst_len;
		return est;
	}

private:
	std::vector<int> list_;
	int              headed_end_ = 0;
};

// Header view at a unit offset of a hard-decided burst.
struct HeaderReader
{
	std::span<const Bit> bits;
	const FrameModel    *model;
	int                  burst_len;

	bool fits(int offset) const { return offset + model->header_units() <= burst_len; }

	std::span<const Bit> header(int offset) const
	{
		return bits.subspan(static_cast<std::size_t>(offset) * model->granularity(), model->header.header_bits());
	}

	int length_of(std::span<const Bit> h) const
	{
		const auto &f = model->header.length;
		return static_cast<int>(get_uint(h.subspan(f.offset, f.width), f.width));
	}

	bool usable_length(int len) const { return len >= model->header_units(); }

	bool crc_ok(int offset) const
	{
		const auto &s = model->header;
		const auto  h = header(offset);
		return crc_remainder(h.first(s.covered_bits()), s.generator, s.hec.width) ==
		       get_uint(h.subspan(s.hec.offset, s.hec.width), s.hec.width);
	}

	/// Valid header with a length that moves forward.
	std::optional<int> valid_length(int offset) const
	{
		if (!fits(offset) || !crc_ok(offset))
			return std::nullopt;
		const int len = length_of(header(offset));
		if (!usable_length(len))
			return std::nullopt;
		return len;
	}

	/// A frame ending at `next` is consistent with what follows: the burst ends there, the
	/// remainder is too short for a data frame, or a valid header starts there.
	bool confirmed_by_next(int next) const
	{
		if (next > burst_len)
			return false;
		if (next == burst_len || burst_len - next < model->lengths.min_len())
			return true;
		return valid_length(next).has_value();
	}
};

} // namespace

SyncEstimate hunt_sync(std::span<const Bit> bits, const FrameModel &model, int burst_len)
{
	const HeaderReader rd{bits, &model, burst_len};
	BoundaryList       out;
	int                offset = 0;
	while (offset < burst_len)
	{
		if (const auto len = rd.valid_length(offset))
		{
			out.add(offset);
			const int end = std::min(offset + *len, burst_len);
			out.add(end);
			out.mark_frame_end(end);
			offset = end;
			continue;
		}
		++offset;
	}
	return out.finish(burst_len);
}

SyncEstimate mu_sync(std::span<const Bit> bits, const FrameModel &model, int burst_len, const MuConfig &config)
{
	enum class State
	{
		hunt,
		sync
	};

	const HeaderReader  rd{bits, &model, burst_len};
	const SyndromeTable table(model.header);
	BoundaryList        out;

	State state  = State::hunt;
	int   offset = 0;
	Bits  fixed(model.header.header_bits());

	auto corrected_length = [&](std::span<const Bit> h, std::initializer_list<int> flips) {
		std::copy(h.begin(), h.end(), fixed.begin());
		for (int i : flips)
			fixed[i] ^= 1;
		return rd.length_of(fixed);
	};

	while (offset < burst_len)
	{
		if (state == State::hunt)
		{
			const auto len = rd.valid_length(offset);
			if (!len)
			{
				++offset;
				continue;
			}
			// PRESYNC: the hit must chain into further valid headers.
			bool confirmed = true;
			int  pos = offset, step = *len;
			for (int c = 0; c < config.presync_confirmations; ++c)
			{
				const int next = pos + step;
				if (!rd.confirmed_by_next(next))
				{
					confirmed = false;
					break;
				}
				const auto next_len = rd.valid_length(next);
				if (!next_len)
					break; // confirmed by the burst end
				pos  = next;
				step = *next_len;
			}
			if (!confirmed)
			{
				++offset;
				continue;
			}
			out.add(offset);
			state = State::sync;
			continue;
		}

		// SYNC
		if (!rd.fits(offset))
			break;
		const auto          h   = rd.header(offset);
		const std::uint32_t syn = table.syndrome(h);
		std::optional<int>  len;
		if (syn == 0)
			len = rd.length_of(h);
		else if (table.single(syn).size() == 1)
			len = corrected_length(h, {table.single(syn).front()});
		else if (config.policy == AmbiguityPolicy::validate_candidates && table.single(syn).empty())
		{
			// Candidates that agree on the length are equivalent for delineation.
			std::optional<int> agreed;
			bool               ambiguous = false;
			for (const auto &[i, j] : table.double_errors(syn))
			{
				const int l = corrected_length(h, {i, j});
				if (!rd.usable_length(l) || !rd.confirmed_by_next(offset + l))
					continue;
				if (agreed && *agreed != l)
					ambiguous = true;
				agreed = l;
			}
			if (!ambiguous)
				len = agreed;
		}
		if (!len || !rd.usable_length(*len))
		{
			state = State::hunt;
			continue;
		}
		const int end = std::min(offset + *len, burst_len);
		out.add(end);
		out.mark_frame_end(end);
		offset = end;
	}
	return out.finish(burst_len);
}

} // namespace framesync
