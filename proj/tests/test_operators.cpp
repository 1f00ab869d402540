#include "scanspectra/models.hpp"
#include "scanspectra/operators.hpp"
#include "scanspectra/rng.hpp"

#include <doctest.h>

namespace {

using namespace scanspectra;

// Hand-computed kernels for the hardcore model on two fully connected sites
// at fugacity 1 (support order: empty, first site occupied, second site
// occupied; uniform 1/3 each).
Eigen::MatrixXd hand_site0() {
    Eigen::MatrixXd m(3, 3);
    m << 0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0, 1;
    return m;
}

Eigen::MatrixXd hand_site1() {
    Eigen::MatrixXd m(3, 3);
    m << 0.5, 0, 0.5, 0, 1, 0, 0.5, 0, 0.5;
    return m;
}

Distribution two_uniform_bits() {
    ProductSpace space({2, 2});
    return normalize_weights(space, Eigen::VectorXd::Ones(4));
}

}  // namespace

TEST_CASE("site kernels of the hardcore pair match hand computation") {
    const Distribution dist = build_hardcore(complete_graph(2), 1.0);
    const MarkovKernel k0 = site_kernel(dist, 0);
    const MarkovKernel k1 = site_kernel(dist, 1);
    CHECK((k0.matrix() - hand_site0()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((k1.matrix() - hand_site1()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(k0.support() == std::vector<Index>{0, 1, 2});
    CHECK(k0.irreducible() == false);  // site moves alone do not connect the support
    CHECK_THROWS_AS(site_kernel(dist, 2), std::invalid_argument);
}

TEST_CASE("site kernel of a product measure has constant rows equal to the marginal") {
    ProductSpace space({2, 3});
    Eigen::VectorXd weights(6);
    // pi = mu0 x mu1 with mu0 = (0.3, 0.7), mu1 = (0.2, 0.5, 0.3)
    const double mu0[2] = {0.3, 0.7};
    const double mu1[3] = {0.2, 0.5, 0.3};
    for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 2; ++a) weights(a + 2 * b) = mu0[a] * mu1[b];
    const Distribution dist = normalize_weights(space, weights);
    const MarkovKernel k0 = site_kernel(dist, 0);
    for (Eigen::Index r = 0; r < k0.size(); ++r) {
        // Row distribution over site-0 values must equal mu0, independent of r.
        const Index x = k0.support()[static_cast<std::size_t>(r)];
        for (int a = 0; a < 2; ++a) {
            const Index y = (x / 2) * 2 + a;
            Eigen::Index col = -1;
            for (Eigen::Index c = 0; c < k0.size(); ++c)
                if (k0.support()[static_cast<std::size_t>(c)] == y) col = c;
            CHECK(k0.matrix()(r, col) == doctest::Approx(mu0[a]).epsilon(1e-13));
        }
    }
}

TEST_CASE("single-site space: every row equals pi") {
    ProductSpace space({4});
    Eigen::VectorXd weights(4);
    weights << 1, 2, 3, 4;
    const Distribution dist = normalize_weights(space, weights);
    const MarkovKernel kernel = site_kernel(dist, 0);
    for (Eigen::Index r = 0; r < 4; ++r)
        CHECK((kernel.matrix().row(r).transpose() - dist.probs()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("random-scan average matches hand computation") {
    const Distribution dist = build_hardcore(complete_graph(2), 1.0);
    const SiteKernelSet set(dist);
    const MarkovKernel glauber = glauber_kernel(set);
    Eigen::MatrixXd expected(3, 3);
    expected << 0.5, 0.25, 0.25, 0.25, 0.75, 0, 0.25, 0, 0.75;
    CHECK((glauber.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(glauber.irreducible());
    CHECK(glauber.kind() == KernelKind::kGlauber);
}

TEST_CASE("random scan of one site equals the site kernel") {
    ProductSpace space({3});
    Eigen::VectorXd weights(3);
    weights << 1, 1, 2;
    const Distribution dist = normalize_weights(space, weights);
    const SiteKernelSet set(dist);
    const MarkovKernel glauber = glauber_kernel(set);
    CHECK((glauber.matrix() - set.kernel(0).matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random scan of two uniform bits: eigenvalues 1, 1/2, 1/2, 0") {
    const SiteKernelSet set(two_uniform_bits());
    const MarkovKernel glauber = glauber_kernel(set);
    // Uniform pi makes the kernel symmetric; eigendecompose directly.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(glauber.matrix());
    const Eigen::VectorXd values = solver.eigenvalues();
    CHECK(values(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(values(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(values(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(values(3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sequence product, chronological leftmost") {
    const Distribution dist = build_hardcore(complete_graph(2), 1.0);
    const SiteKernelSet set(dist);
    const MarkovKernel scan = sequence_product_kernel(set, std::vector<int>{0, 1});
    Eigen::MatrixXd expected(3, 3);
    expected << 0.25, 0.5, 0.25, 0.25, 0.5, 0.25, 0.5, 0, 0.5;
    CHECK((scan.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(scan.label() == "scan [0 1]");
    CHECK(scan.kind() == KernelKind::kSequence);
    CHECK((scan.matrix() - hand_site0() * hand_site1()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("a full scan of a product measure mixes in one sweep") {
    const SiteKernelSet set(two_uniform_bits());
    const MarkovKernel scan = sequence_product_kernel(set, std::vector<int>{1, 0});
    for (Eigen::Index r = 0; r < scan.size(); ++r)
        CHECK((scan.matrix().row(r).transpose() - scan.pi()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("repeating a site is idempotent") {
    const Distribution dist = build_hardcore(complete_graph(2), 1.0);
    const SiteKernelSet set(dist);
    const MarkovKernel twice = sequence_product_kernel(set, std::vector<int>{1, 1});
    const MarkovKernel once = sequence_product_kernel(set, std::vector<int>{1});
    CHECK((twice.matrix() - once.matrix()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("empty sequence yields the identity kernel with a warning label") {
    const Distribution dist = build_hardcore(complete_graph(2), 1.0);
    const SiteKernelSet set(dist);
    const MarkovKernel identity = sequence_product_kernel(set, std::vector<int>{});
    CHECK(identity.is_identity());
    CHECK(identity.kind() == KernelKind::kIdentity);
    CHECK(identity.label().find("warning") != std::string::npos);
}

TEST_CASE("projection check: site kernels pass, the random-scan average is not idempotent") {
    const Distribution dist = build_hardcore(complete_graph(2), 1.0);
    const SiteKernelSet set(dist);
    for (int site = 0; site < 2; ++site)
        CHECK(check_projection_properties(set.kernel(site)).pass);
    const ProjectionCheck glauber_check = check_projection_properties(glauber_kernel(set));
    CHECK(glauber_check.detailed_balance_residual <= 1e-10);
    CHECK(glauber_check.idempotence_residual > 1e-3);  // eigenvalues 1, 3/4, 1/4
    CHECK_FALSE(glauber_check.pass);
    const MarkovKernel identity = sequence_product_kernel(set, std::vector<int>{});
    CHECK(check_projection_properties(identity).pass);
}

TEST_CASE("kernel validation rejects broken matrices") {
    Eigen::VectorXd pi(2);
    pi << 0.5, 0.5;
    Eigen::MatrixXd not_stochastic(2, 2);
    not_stochastic << 0.9, 0.2, 0.5, 0.5;
    CHECK_THROWS_AS(MarkovKernel::make(not_stochastic, pi, {0, 1}, "bad", KernelKind::kCustom, 1),
                    std::invalid_argument);
    Eigen::MatrixXd negative(2, 2);
    negative << 1.1, -0.1, 0.5, 0.5;
    CHECK_THROWS_AS(MarkovKernel::make(negative, pi, {0, 1}, "bad", KernelKind::kCustom, 1),
                    std::invalid_argument);
    Eigen::MatrixXd not_stationary(2, 2);
    not_stationary << 0.9, 0.1, 0.5, 0.5;
    CHECK_THROWS_AS(MarkovKernel::make(not_stationary, pi, {0, 1}, "bad", KernelKind::kCustom, 1),
                    std::invalid_argument);
    // Entries in [-1e-14, 0) are clamped to exact zero.
    Eigen::MatrixXd nearly(2, 2);
    nearly << 1.0 + 5e-15, -5e-15, -5e-15, 1.0 + 5e-15;
    const MarkovKernel kernel =
        MarkovKernel::make(nearly, pi, {0, 1}, "clamped", KernelKind::kCustom, 1);
    CHECK(kernel.matrix()(0, 1) == 0.0);
    CHECK(kernel.matrix()(1, 0) == 0.0);
}

TEST_CASE("stationarity and row sums hold for every constructed kernel") {
    Rng rng(3);
    for (const auto& dist :
         {build_hardcore(complete_graph(4), 2.0), build_ising(cycle_graph(4), 0.5, 0.3)}) {
        const SiteKernelSet set(dist);
        std::vector<MarkovKernel> kernels;
        kernels.push_back(glauber_kernel(set));
        std::vector<int> seq;
        for (int i = 0; i < 9; ++i)
            seq.push_back(static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(set.sites()))));
        kernels.push_back(sequence_product_kernel(set, seq));
        for (const MarkovKernel& kernel : kernels) {
            for (Eigen::Index r = 0; r < kernel.size(); ++r)
                CHECK(std::abs(kernel.matrix().row(r).sum() - 1.0) <= 1e-10);
            const Eigen::VectorXd residual =
                (kernel.pi().transpose() * kernel.matrix()).transpose() - kernel.pi();
            CHECK(residual.cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("the random-scan transition graph is strongly connected on built-in models") {
    for (const auto& dist :
         {build_hardcore(complete_graph(5), 1.0), build_hardcore(path_graph(4), 0.5),
          build_ising(path_graph(5), -1.0, 0.3)}) {
        const SiteKernelSet set(dist);
        CHECK(glauber_kernel(set).irreducible());
    }
}
