#include <numbers>

#include "support.hpp"

using namespace framesync;
using testing::for_all;

TEST_SUITE("channel")
{
	TEST_CASE("snr to noise variance")
	{
		CHECK(ChannelConfig{ChannelKind::awgn, 0.0}.sigma2() == doctest::Approx(0.5));
		CHECK(ChannelConfig{ChannelKind::awgn, 10.0}.sigma2() == doctest::Approx(0.05));
		CHECK(ChannelConfig{ChannelKind::awgn, 3.0, 2.5}.sigma2() == 2.5);
		CHECK_THROWS_AS((ChannelConfig{ChannelKind::awgn, 0.0, 0.0}.sigma2()), std::invalid_argument);
		CHECK_THROWS_AS((ChannelConfig{ChannelKind::awgn, -1e6}.sigma2()), std::invalid_argument);
	}

	TEST_CASE("noiseless limit reproduces the symbols")
	{
		Rng        rng(1);
		const Bits bits{0, 1, 1, 0, 1, 0, 0, 0};
		const auto obs = transmit(bits, ChannelConfig{ChannelKind::awgn, 0.0, 1e-30}, rng);
		REQUIRE(obs.size() == 8);
		for (std::size_t i = 0; i < bits.size(); ++i)
		{
			CHECK(obs.y(i) == doctest::Approx(bpsk(bits[i])).epsilon(1e-12));
			CHECK(obs.a(i) == 1.0);
		}
	}

	TEST_CASE("rayleigh amplitudes have unit power")
	{
		Rng        rng(2);
		const Bits bits(1000000, 0);
		const auto obs = transmit(bits, ChannelConfig{ChannelKind::rayleigh, 10.0}, rng);
		CHECK(obs.a.square().mean() == doctest::Approx(1.0).epsilon(0.01));
		CHECK((obs.a >= 0.0).all());
	}

	TEST_CASE("transmission is reproducible under a seed")
	{
		const Bits bits(500, 1);
		Rng        r1(3), r2(3);
		const auto a = transmit(bits, ChannelConfig{ChannelKind::rayleigh, 2.0}, r1);
		const auto b = transmit(bits, ChannelConfig{ChannelKind::rayleigh, 2.0}, r2);
		CHECK((a.y == b.y).all());
		CHECK((a.a == b.a).all());
	}

	TEST_CASE("gaussian bit likelihood")
	{
		CHECK(bit_likelihood(1.0, 1.0, 0, 1.0) == doctest::Approx(0.398942).epsilon(1e-6));
		CHECK(bit_likelihood(-1.0, 1.0, 0, 1.0) == doctest::Approx(0.053991).epsilon(1e-5));
		CHECK(bit_likelihood(0.3, 0.0, 0, 0.7) == bit_likelihood(0.3, 0.0, 1, 0.7));
	}

	TEST_CASE("bit likelihoods are positive and finite")
	{
		for_all(21, testing::property_cases, [](Rng &rng, int) {
			std::uniform_real_distribution<double> y(-5, 5), a(0, 3), s2(0.05, 10);
			const double                           yy = y(rng), aa = a(rng), ss = s2(rng);
			const double                           p0 = bit_likelihood(yy, aa, 0, ss);
			const double                           p1 = bit_likelihood(yy, aa, 1, ss);
			REQUIRE(std::isfinite(p0));
			REQUIRE(std::isfinite(p1));
			REQUIRE(p0 * p1 > 0.0);
		});
	}

	TEST_CASE("bit likelihood integrates to one")
	{
		for (double s2 : {0.01, 0.5, 4.0})
			for (double a : {0.0, 0.4, 1.0, 2.2})
				for (Bit b : {Bit{0}, Bit{1}})
				{
					const double sigma = std::sqrt(s2);
					const double mu    = a * bpsk(b);
					const double lo = mu - 10 * sigma, hi = mu + 10 * sigma;
					const int    n  = 20000;
					const double h  = (hi - lo) / n;
					double       s  = 0.5 * (bit_likelihood(lo, a, b, s2) + bit_likelihood(hi, a, b, s2));
					for (int i = 1; i < n; ++i)
						s += bit_likelihood(lo + i * h, a, b, s2);
					CHECK(s * h == doctest::Approx(1.0).epsilon(1e-6));
				}
	}

	TEST_CASE("hard decisions at high snr")
	{
		Rng        rng(4);
		Bits       bits(1000000);
		std::bernoulli_distribution coin(0.5);
		for (auto &b : bits)
			b = coin(rng);
		const auto obs    = transmit(bits, ChannelConfig{ChannelKind::awgn, 15.0}, rng);
		long       errors = 0;
		for (Eigen::Index i = 0; i < obs.size(); ++i)
			errors += ((obs.y(i) >= 0.0 ? 0 : 1) != bits[i]);
		CHECK(errors <= 100);
	}

	TEST_CASE("likelihood table normalises rows")
	{
		Eigen::ArrayX2d raw(3, 2);
		raw << 0.4, 0.1, 0.0, 2.0, 1e-300, 1e-300;
		const LikelihoodTable t(raw);
		CHECK(t.prob(0, 0) == doctest::Approx(0.8));
		CHECK(t.prob(0, 1) == doctest::Approx(0.2));
		CHECK(t.prob(1, 1) == 1.0);
		CHECK(t.prob(2, 0) == doctest::Approx(0.5));
		CHECK(t.log_ones(0, 1) == doctest::Approx(std::log(0.2)));
		CHECK(t.log_ones(1, 2) == 0.0);
		CHECK(t.log_ones(0, 3) == doctest::Approx(std::log(0.2 * 0.5)));

		Eigen::ArrayX2d bad(1, 2);
		bad << -0.1, 0.5;
		CHECK_THROWS_AS(LikelihoodTable{bad}, std::invalid_argument);
		bad << 0.0, 0.0;
		CHECK_THROWS_AS(LikelihoodTable{bad}, std::invalid_argument);
	}

	TEST_CASE("an impossible one makes the all-ones span impossible")
	{
		Eigen::ArrayX2d raw(3, 2);
		raw << 0.5, 0.5, 1.0, 0.0, 0.5, 0.5;
		const LikelihoodTable t(raw);
		CHECK(t.log_ones(0, 1) == doctest::Approx(std::log(0.5)));
		CHECK(t.log_ones(1, 2) == -std::numeric_limits<double>::infinity());
		CHECK(t.log_ones(0, 3) == -std::numeric_limits<double>::infinity());
		CHECK(t.log_ones(2, 3) == doctest::Approx(std::log(0.5)));
	}

	TEST_CASE("table from an observation keeps finite logs at extreme snr")
	{
		Observation obs;
		obs.y = Eigen::ArrayXd::Constant(4, 50.0);
		obs.a = Eigen::ArrayXd::Ones(4);
		const auto t = LikelihoodTable::from_observation(obs, 1e-4);
		for (Eigen::Index i = 0; i < 4; ++i)
		{
			CHECK(std::isfinite(t.log_prob(i, 1)));
			CHECK(t.log_prob(i, 0) == doctest::Approx(0.0));
		}
	}

	TEST_CASE("table from an observation matches the gaussian ratio")
	{
		for_all(22, testing::property_cases, [](Rng &rng, int) {
			std::uniform_real_distribution<double> y(-4, 4), a(0, 3), s2(0.05, 5);
			Observation                            obs;
			obs.y = Eigen::ArrayXd::Constant(1, y(rng));
			obs.a = Eigen::ArrayXd::Constant(1, a(rng));
			const double ss = s2(rng);
			const auto   t  = LikelihoodTable::from_observation(obs, ss);
			const double p0 = bit_likelihood(obs.y(0), obs.a(0), 0, ss);
			const double p1 = bit_likelihood(obs.y(0), obs.a(0), 1, ss);
			REQUIRE(t.prob(0, 0) == doctest::Approx(p0 / (p0 + p1)).epsilon(1e-12));
			REQUIRE(t.prob(0, 0) + t.prob(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
		});
	}

	TEST_CASE("uniform span log-likelihood")
	{
		CHECK(LikelihoodTable::log_uniform_span(3, 3) == 0.0);
		CHECK(LikelihoodTable::log_uniform_span(0, 8) == doctest::Approx(-8 * std::numbers::ln2));
	}
}
