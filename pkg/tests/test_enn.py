# Standard library
import time

from unittest import TestCase

# Third party
import numpy as np

# Local imports
from splitlora._util import DivergenceError

from splitlora.enn import EnnConfig, EnnModel, Gradients, LearningRates
from splitlora.enn import dct_basis_cos, dct_basis_sin, activation_eval, activation_eval_folded
from splitlora.enn import fold_index, fold_indices, argument_of_index, tanh_coefficients_on_grid
from splitlora.enn import clamp_hidden, hidden_arguments
from splitlora.enn import forward, predict, classify, first_layer_factors, input_normalization
from splitlora.enn import grad_first_layer, grad_receiver_params, gradients, lms_step
from splitlora.enn import train_centralized, accuracy, mean_squared_error

from splitlora.datasets import Dataset, DatasetSpec, make_map_dataset

from splitlora.phy import quantize_array

from splitlora._util_test import random_model, central_difference, relative_error


class TestDctBasis(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_cosine_examples(self):
        self.assertAlmostEqual(dct_basis_cos(1, -1, 4), np.cos(np.pi / 8), places=12)
        self.assertAlmostEqual(dct_basis_cos(1, -0.25, 4), 0.0, places=12)
        self.assertAlmostEqual(dct_basis_cos(2, -1, 8), np.cos(3 * np.pi / 16), places=12)

    def test_sine_examples(self):
        self.assertAlmostEqual(dct_basis_sin(1, -0.25, 4), 1.0, places=12)
        self.assertAlmostEqual(dct_basis_sin(1, -1, 4), np.sin(np.pi / 8), places=12)

    def test_pythagorean_identity_and_boundedness(self):
        rng = np.random.default_rng(1)
        x = rng.uniform(-20, 20, size=500)
        i = rng.integers(1, 12, size=500)
        cosines = dct_basis_cos(i, x, 32)
        sines = dct_basis_sin(i, x, 32)

        np.testing.assert_allclose(cosines ** 2 + sines ** 2, 1.0, atol=1e-12)
        self.assertTrue(np.all(np.abs(cosines) <= 1.0))

    def test_invalid_arguments_are_rejected(self):
        with self.assertRaises(ValueError):
            dct_basis_cos(0, 0.5, 8)
        with self.assertRaises(ValueError):
            dct_basis_cos(1, 0.5, 1)
        with self.assertRaises(ValueError):
            dct_basis_sin(1, np.nan, 8)
        with self.assertRaises(ValueError):
            dct_basis_cos(1, np.inf, 8)

    def test_odd_basis_is_antisymmetric_on_the_grid(self):
        # Index k and N - 1 - k mirror each other around the center of the grid
        N = 16
        k = np.arange(N)
        for i in range(1, 6):
            left = dct_basis_cos(i, argument_of_index(k, N), N)
            right = dct_basis_cos(i, argument_of_index(N - 1 - k, N), N)
            np.testing.assert_allclose(left, -right, atol=1e-12)

    def test_tanh_coefficients_approximate_tanh(self):
        coefficients = tanh_coefficients_on_grid(6, 128)
        x = np.linspace(-0.9, 0.9, 181)
        approximation = activation_eval(coefficients, x, 128)

        self.assertLess(np.max(np.abs(approximation - np.tanh(x))), 0.02)


class TestActivation(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_single_coefficient_is_the_basis_function(self):
        for z in [-1.3, -0.2, 0.0, 0.7, 2.4]:
            self.assertAlmostEqual(activation_eval([1, 0, 0], z, 16), dct_basis_cos(1, z, 16), places=12)

    def test_zero_coefficients_give_zero(self):
        self.assertEqual(activation_eval(np.zeros(6), 0.3, 16), 0.0)

    def test_two_coefficients_term_by_term(self):
        expected = 0.5 * dct_basis_cos(1, 0.3, 16) - 0.2 * dct_basis_cos(2, 0.3, 16)
        self.assertAlmostEqual(activation_eval([0.5, -0.2], 0.3, 16), expected, places=12)

    def test_vectorized_evaluation(self):
        F = np.array([0.3, -0.1, 0.05])
        z = np.array([[-0.5, 0.1], [0.9, 1.7]])
        result = activation_eval(F, z, 32)

        self.assertEqual(result.shape, z.shape)
        self.assertAlmostEqual(result[1, 1], activation_eval(F, 1.7, 32), places=12)

    def test_bounded_by_absolute_coefficient_sum(self):
        F = np.array([0.4, -0.3, 0.2, -0.1])
        values = activation_eval(F, np.linspace(-5, 5, 1001), 64)
        self.assertTrue(np.all(np.abs(values) <= np.sum(np.abs(F)) + 1e-12))


class TestFolding(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_fold_index_examples(self):
        self.assertEqual(fold_index(11, 8), (3, -1))
        self.assertEqual(fold_index(5, 8), (5, 1))
        self.assertEqual(fold_index(17, 8), (1, 1))

    def test_fold_index_of_negative_indices(self):
        self.assertEqual(fold_index(-1, 8), (7, -1))
        self.assertEqual(fold_index(-8, 8), (0, -1))
        self.assertEqual(fold_index(-9, 8), (7, 1))

    def test_array_version_matches_scalar_version(self):
        N = 8
        z_bar = np.arange(-4 * N, 4 * N + 1)
        k, signs = fold_indices(z_bar, N)
        for value, index, sign in zip(z_bar, k, signs):
            self.assertEqual(fold_index(value, N), (index, sign))

    def test_folding_identity(self):
        N = 16
        rng = np.random.default_rng(5)
        z_bar = np.arange(-4 * N, 4 * N + 1)
        k, signs = fold_indices(z_bar, N)

        for _ in range(200):
            F = rng.uniform(-1, 1, size=6)
            unfolded = activation_eval(F, argument_of_index(z_bar, N), N)
            folded = signs * activation_eval(F, argument_of_index(k, N), N)
            self.assertLess(np.max(np.abs(unfolded - folded)), 1e-12)

    def test_clamp_hidden_examples(self):
        z = np.array([-2.0, 0.1, 1.5])

        np.testing.assert_allclose(clamp_hidden(z, 8, 1), [-1.0, 0.0, 0.75])
        np.testing.assert_allclose(clamp_hidden(z, 8, 2), [-1.0, 0.0, 1.5])

    def test_clamp_hidden_matches_the_plain_quantizer(self):
        z = np.random.default_rng(4).uniform(-3, 5, size=300)
        for extension in [1, 2, 4]:
            k, _, _ = quantize_array(z, 16, 'plain_fsk', extension)
            np.testing.assert_array_equal(clamp_hidden(z, 16, extension), argument_of_index(k, 16))

    def test_hidden_arguments(self):
        z = np.array([[-1.3, 0.2], [0.9, 2.6]])

        arguments, signs = hidden_arguments(z, 8)
        np.testing.assert_array_equal(arguments, z)
        np.testing.assert_array_equal(signs, np.ones_like(z))

        arguments, signs = hidden_arguments(z, 8, clamp=1)
        np.testing.assert_array_equal(arguments, clamp_hidden(z, 8, 1))
        np.testing.assert_array_equal(signs, np.ones_like(z))

        arguments, signs = hidden_arguments(z, 8, folded=True)
        self.assertTrue(np.all((arguments >= -1.0) & (arguments < 1.0)))
        self.assertEqual(set(np.unique(signs)), {-1.0, 1.0})

        with self.assertRaises(ValueError):
            hidden_arguments(z, 8, folded=True, clamp=1)

    def test_activation_eval_folded(self):
        F = np.array([0.5, -0.25, 0.1])
        N = 16
        positive = activation_eval_folded(F, 5, 1, N)

        self.assertAlmostEqual(positive, activation_eval(F, argument_of_index(5, N), N), places=12)
        self.assertAlmostEqual(activation_eval_folded(F, 5, -1, N), -positive, places=12)

    def test_activation_eval_folded_rejects_invalid_arguments(self):
        with self.assertRaises(ValueError):
            activation_eval_folded([1.0], 16, 1, 16)
        with self.assertRaises(ValueError):
            activation_eval_folded([1.0], -1, 1, 16)
        with self.assertRaises(ValueError):
            activation_eval_folded([1.0], 3, 0, 16)


class TestEnnModel(TestCase):

    CONFIG = EnnConfig(2, 3, 4, 16)

    # ACTUAL TEST CASES
    # -----------------

    def test_config_validation(self):
        with self.assertRaises(ValueError):
            EnnConfig(2, 0, 6, 128)
        with self.assertRaises(ValueError):
            EnnConfig(2, 6, 0, 128)
        with self.assertRaises(ValueError):
            EnnConfig(2, 6, 6, 127)

    def test_config_from_dict_uses_defaults(self):
        config = EnnConfig.from_dict({'dct_size': 64})
        self.assertEqual(config.hidden_neurons, 6)
        self.assertEqual(config.dct_size, 64)
        # The defaults themselves are not touched
        self.assertEqual(EnnConfig.DEFAULT_DICT['dct_size'], 128)

    def test_shapes_are_checked(self):
        with self.assertRaises(ValueError):
            EnnModel(np.zeros((2, 3)), np.zeros(4), np.zeros((4, 3)), np.zeros(4), self.CONFIG)

    def test_non_finite_parameters_are_rejected(self):
        A1 = np.zeros((3, 3))
        A1[1, 1] = np.nan
        with self.assertRaises(ValueError):
            EnnModel(A1, np.zeros(4), np.zeros((4, 3)), np.zeros(4), self.CONFIG)

    def test_parameters_are_read_only(self):
        model = EnnModel.zeros(self.CONFIG)
        with self.assertRaises(ValueError):
            model.A1[0, 0] = 1.0

    def test_text_format_is_lossless(self):
        model = random_model(self.CONFIG, np.random.default_rng(3))
        text = model.to_text()

        self.assertTrue(text.startswith('# splitlora enn model\n# input_dim=2 hidden_neurons=3 half_coeffs=4'))
        self.assertEqual(EnnModel.from_text(text), model)

    def test_text_format_rejects_garbage(self):
        with self.assertRaises(ValueError):
            EnnModel.from_text('hello world')

    def test_equality(self):
        model1 = random_model(self.CONFIG, np.random.default_rng(3))
        model2 = random_model(self.CONFIG, np.random.default_rng(3))
        model3 = random_model(self.CONFIG, np.random.default_rng(4))

        self.assertEqual(model1, model2)
        self.assertNotEqual(model1, model3)
        with self.assertRaises(TypeError):
            model1 == 'model'

    def test_initialization(self):
        config = EnnConfig.from_dict({})
        model = EnnModel.initialize(config, np.random.default_rng(0))
        coefficients = 0.5 * tanh_coefficients_on_grid(config.half_coeffs, config.dct_size)

        self.assertTrue(np.all(np.abs(model.A1) <= 0.5))
        self.assertTrue(np.all(np.abs(model.A2) <= 0.5))
        self.assertTrue(np.all(np.abs(model.F1 - coefficients[:, None]) <= 0.01 + 1e-12))
        self.assertTrue(np.all(np.abs(model.F2 - coefficients) <= 0.01 + 1e-12))


class TestForward(TestCase):

    CONFIG = EnnConfig(2, 4, 5, 32)

    # ACTUAL TEST CASES
    # -----------------

    def test_zero_weights(self):
        model = random_model(self.CONFIG, np.random.default_rng(0)).replace(A1=np.zeros((3, 4)), A2=np.zeros(5))
        trace = forward(model, [0.3, -0.6])

        np.testing.assert_array_equal(trace.z1, np.zeros(4))
        self.assertEqual(trace.z2, 0.0)
        self.assertAlmostEqual(trace.y_hat, activation_eval(model.F2, 0.0, 32), places=12)

    def test_zero_coefficients_give_zero_output(self):
        model = random_model(self.CONFIG, np.random.default_rng(0)).replace(F1=np.zeros((5, 4)), F2=np.zeros(5))
        self.assertEqual(forward(model, [0.9, 0.1]).y_hat, 0.0)

    def test_matches_straight_line_implementation(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            model = random_model(self.CONFIG, rng)
            x = rng.uniform(-1, 1, size=2)
            trace = forward(model, x)

            self.assertAlmostEqual(trace.y_hat, self.straight_line_forward(model, x), places=12)
            np.testing.assert_array_equal(trace.s0, np.array([1.0, x[0], x[1]]))

    def test_dimension_mismatch(self):
        model = EnnModel.zeros(self.CONFIG)
        with self.assertRaises(ValueError):
            forward(model, [0.1, 0.2, 0.3])

    def test_predict_agrees_with_forward(self):
        rng = np.random.default_rng(8)
        model = random_model(self.CONFIG, rng)
        X = rng.uniform(-1, 1, size=(25, 2))

        for hidden in [{}, {'folded': True}, {'clamp': 1}, {'clamp': 3}]:
            predictions = predict(model, X, **hidden)
            expected = [forward(model, x, **hidden).y_hat for x in X]
            np.testing.assert_allclose(predictions, expected, rtol=0, atol=1e-12)

    def test_folded_forward_uses_grid_arguments(self):
        model = random_model(self.CONFIG, np.random.default_rng(9), scale=2.0)
        trace = forward(model, [0.8, -0.7], folded=True)

        indices = (trace.z1 + 1.0) * 32 / 2.0
        np.testing.assert_allclose(indices, np.round(indices), atol=1e-9)
        self.assertTrue(np.all((indices >= 0) & (indices <= 31)))
        self.assertTrue(set(np.unique(trace.fold_signs)).issubset({-1.0, 1.0}))

    def test_classify_counts_zero_as_positive(self):
        np.testing.assert_array_equal(classify(np.array([-0.1, 0.0, 0.2])), [-1, 1, 1])

    # HELPER METHODS
    # --------------

    @classmethod
    def straight_line_forward(cls, model: EnnModel, x) -> float:
        N = model.config.dct_size
        s0 = [1.0, x[0], x[1]]

        s1 = []
        for m in range(model.config.hidden_neurons):
            z = sum(model.A1[i, m] * s0[i] for i in range(3))
            s1.append(sum(model.F1[q - 1, m] * np.cos(np.pi / (2 * N) * (2 * q - 1) * (N * (z + 1) + 1))
                          for q in range(1, model.config.half_coeffs + 1)))

        z2 = model.A2[0] + sum(model.A2[m + 1] * s1[m] for m in range(len(s1)))
        return sum(model.F2[q - 1] * np.cos(np.pi / (2 * N) * (2 * q - 1) * (N * (z2 + 1) + 1))
                   for q in range(1, model.config.half_coeffs + 1))


class TestGradients(TestCase):

    CONFIG = EnnConfig(2, 3, 4, 16)

    # ACTUAL TEST CASES
    # -----------------

    def test_zero_error_gives_zero_gradients(self):
        model = random_model(self.CONFIG, np.random.default_rng(0))
        trace = forward(model, [0.2, 0.4])

        grads = gradients(trace, model, 0.0)
        for name, value in grads.items():
            np.testing.assert_array_equal(value, np.zeros_like(value), err_msg=name)

    def test_zero_output_coefficients_give_zero_first_layer_gradient(self):
        model = random_model(self.CONFIG, np.random.default_rng(0)).replace(F2=np.zeros(4))
        trace = forward(model, [0.2, 0.4])
        np.testing.assert_array_equal(grad_first_layer(trace, model, 0.7), np.zeros((3, 3)))

    def test_gradients_match_finite_differences(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            model = random_model(self.CONFIG, rng)
            x = rng.uniform(-1, 1, size=2)
            y = rng.choice([-1.0, 1.0])
            trace = forward(model, x)
            grads = gradients(trace, model, y - trace.y_hat, normalization='none')

            for name, analytic in grads.items():
                numeric = central_difference(self.loss_function(model, name, x, y), getattr(model, name), step=1e-5)
                self.assertLess(relative_error(analytic, numeric), 1e-5, msg=name)

    def test_entry_normalization_divides_by_the_input(self):
        model = random_model(self.CONFIG, np.random.default_rng(2))
        trace = forward(model, [0.5, -0.25])
        error = 0.3

        plain = grad_first_layer(trace, model, error, normalization='none')
        entry = grad_first_layer(trace, model, error, normalization='entry')
        factors = first_layer_factors(trace, model, error)

        np.testing.assert_allclose(entry[0], factors, atol=1e-14)
        np.testing.assert_allclose(entry[1], plain[1] / 0.25, atol=1e-12)
        np.testing.assert_allclose(entry[2], plain[2] / 0.0625, atol=1e-12)

    def test_entry_normalization_of_degenerate_inputs(self):
        factors = input_normalization(np.array([1.0, 1e-9, -2.0]), 'entry')
        np.testing.assert_allclose(factors, [1.0, 0.0, -0.5])

    def test_vector_normalization(self):
        s0 = np.array([1.0, 0.5, -0.5])
        np.testing.assert_allclose(input_normalization(s0, 'vector'), s0 / 1.5)

    def test_unknown_normalization(self):
        with self.assertRaises(ValueError):
            input_normalization(np.ones(3), 'batch')

    def test_single_coefficient_output_gradient(self):
        config = EnnConfig(2, 2, 1, 16)
        model = random_model(config, np.random.default_rng(4))
        trace = forward(model, [0.1, 0.2])
        error = 0.8

        _, _, gF2 = grad_receiver_params(trace, model, error)
        # y_hat = F2 cos_1(z2), so d(0.5 error^2)/dF2 = -error cos_1(z2)
        self.assertAlmostEqual(gF2[0], -error * dct_basis_cos(1, trace.z2, 16), places=12)

    # HELPER METHODS
    # --------------

    @classmethod
    def loss_function(cls, model: EnnModel, name: str, x, y):
        def loss(value):
            return 0.5 * (y - forward(model.replace(**{name: value}), x).y_hat) ** 2
        return loss


class TestLmsStep(TestCase):

    CONFIG = EnnConfig(1, 1, 1, 8)

    # ACTUAL TEST CASES
    # -----------------

    def test_zero_gradients_leave_model_unchanged(self):
        model = random_model(self.CONFIG, np.random.default_rng(0))
        grads = Gradients(np.zeros((2, 1)), np.zeros(2), np.zeros((1, 1)), np.zeros(1))

        self.assertEqual(lms_step(model, grads, LearningRates(0.1, 0.1)), model)

    def test_zero_learning_rates_leave_model_unchanged(self):
        model = random_model(self.CONFIG, np.random.default_rng(0))
        grads = Gradients(np.ones((2, 1)), np.ones(2), np.ones((1, 1)), np.ones(1))

        self.assertEqual(lms_step(model, grads, LearningRates(0.0, 0.0)), model)

    def test_hand_computed_step(self):
        model = EnnModel([[0.1], [0.2]], [0.3, 0.4], [[0.5]], [0.6], self.CONFIG)
        grads = Gradients([[1.0], [-1.0]], [2.0, 0.0], [[10.0]], [-10.0])

        updated = lms_step(model, grads, LearningRates(0.1, 0.01))

        np.testing.assert_allclose(updated.A1, [[0.0], [0.3]])
        np.testing.assert_allclose(updated.A2, [0.1, 0.4])
        np.testing.assert_allclose(updated.F1, [[0.4]])
        np.testing.assert_allclose(updated.F2, [0.7])
        # The original model is not modified
        np.testing.assert_allclose(model.A1, [[0.1], [0.2]])

    def test_partial_gradient_dict(self):
        model = EnnModel([[0.1], [0.2]], [0.3, 0.4], [[0.5]], [0.6], self.CONFIG)
        updated = lms_step(model, {'F2': np.array([1.0])}, LearningRates(0.1, 0.1))

        np.testing.assert_allclose(updated.F2, [0.5])
        np.testing.assert_array_equal(updated.A1, model.A1)

    def test_invalid_gradients_are_rejected(self):
        model = EnnModel.zeros(self.CONFIG)
        with self.assertRaises(ValueError):
            lms_step(model, {'A2': np.zeros(3)}, LearningRates(0.1, 0.1))
        with self.assertRaises(ValueError):
            lms_step(model, {'A2': np.array([np.inf, 0.0])}, LearningRates(0.1, 0.1))

    def test_learning_rate_validation(self):
        with self.assertRaises(ValueError):
            LearningRates(-0.1, 0.1)
        self.assertEqual(LearningRates.from_dict({}).to_dict(), {'weights': 1e-2, 'coefficients': 1e-3})


class TestTrainCentralized(TestCase):

    # ACTUAL TEST CASES
    # -----------------

    def test_zero_epochs(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        dataset = self.get_dataset('halfplane', 50)

        trained, metrics = train_centralized(model, dataset, 0)
        self.assertEqual(trained, model)
        self.assertEqual(metrics, [])

    def test_learns_the_halfplane(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(1))
        train = self.get_dataset('halfplane', 3000, seed=1)
        test = self.get_dataset('halfplane', 2000, seed=2)

        trained, metrics = train_centralized(model, train, 6, LearningRates(3e-3, 1e-3), rng_seed=1)

        self.assertEqual(len(metrics), 6)
        self.assertEqual(list(metrics[0].keys()), ['epoch', 'accuracy', 'mse'])
        self.assertGreater(accuracy(trained, test), 0.95)
        self.assertLess(mean_squared_error(trained, test), mean_squared_error(model, test))

    def test_equal_seeds_give_identical_models(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        dataset = self.get_dataset('rings', 300)

        first, first_metrics = train_centralized(model, dataset, 2, rng_seed=5)
        second, second_metrics = train_centralized(model, dataset, 2, rng_seed=5)

        self.assertEqual(first, second)
        self.assertEqual(first_metrics, second_metrics)

    def test_folded_training_runs(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        trained, metrics = train_centralized(model, self.get_dataset('halfplane', 200), 1, folded=True)

        self.assertEqual(len(metrics), 1)
        self.assertNotEqual(trained, model)

    def test_matches_the_step_by_step_lms_updates(self):
        model = EnnModel.initialize(EnnConfig(2, 4, 5, 32), np.random.default_rng(3))
        dataset = self.get_dataset('rings', 150, seed=3)
        learning_rates = LearningRates(2e-2, 5e-3)

        for normalization in ['vector', 'none']:
            for hidden in [{}, {'folded': True}, {'clamp': 1}]:
                trained, _ = train_centralized(model, dataset, 2, learning_rates, 4, normalization, **hidden)
                expected = self.reference_training(model, dataset, 2, learning_rates, 4, normalization, **hidden)

                for name in EnnModel.GROUPS:
                    np.testing.assert_allclose(
                        getattr(trained, name), getattr(expected, name), rtol=1e-10, atol=1e-12,
                        err_msg='{} {} {}'.format(normalization, hidden, name)
                    )

    def test_clamped_training_runs(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        dataset = self.get_dataset('halfplane', 200)
        trained, metrics = train_centralized(model, dataset, 1, clamp=1)

        self.assertEqual(len(metrics), 1)
        self.assertNotEqual(trained, model)
        self.assertTrue(0.0 <= accuracy(trained, dataset, clamp=1) <= 1.0)
        with self.assertRaises(ValueError):
            train_centralized(model, dataset, 1, folded=True, clamp=1)

    def test_steps_are_fast_enough_for_the_default_scale(self):
        # The default run makes one million steps, which has to stay well below five minutes
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        dataset = self.get_dataset('rings', 3000)

        start = time.perf_counter()
        train_centralized(model, dataset, 1, folded=True)
        elapsed = time.perf_counter() - start

        self.assertLess(elapsed / len(dataset), 3e-4)

    def test_invalid_datasets(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        with self.assertRaises(ValueError):
            train_centralized(model, Dataset(np.zeros((0, 2)), np.zeros(0)), 1)
        with self.assertRaises(ValueError):
            train_centralized(model, Dataset(np.zeros((2, 2)), np.array([1.0, 0.0])), 1)

    def test_divergence_is_reported(self):
        model = EnnModel.initialize(EnnConfig.from_dict({}), np.random.default_rng(0))
        dataset = self.get_dataset('halfplane', 20)

        with self.assertRaises(DivergenceError) as context:
            train_centralized(model, dataset, 1, LearningRates(1e308, 1e308))
        self.assertEqual(context.exception.epoch, 0)

    def test_accuracy_of_constant_model(self):
        # F2 = [-1, 0, ..] and zero weights: y_hat = -cos_1(0) > 0 for every input
        config = EnnConfig.from_dict({})
        model = EnnModel.zeros(config).replace(F2=-np.eye(config.half_coeffs)[0])
        positives = Dataset(np.zeros((10, 2)), np.ones(10))
        balanced = Dataset(np.zeros((10, 2)), np.array([1.0, -1.0] * 5))

        self.assertEqual(accuracy(model, positives), 1.0)
        self.assertEqual(accuracy(model, balanced), 0.5)

    # HELPER METHODS
    # --------------

    @classmethod
    def get_dataset(cls, labeler: str, n: int, seed: int = 0) -> Dataset:
        train, _ = make_map_dataset(DatasetSpec(labeler, n, 1, seed))
        return train

    @classmethod
    def reference_training(cls, model, dataset, epochs, learning_rates, rng_seed, normalization, **hidden) -> EnnModel:
        rng = np.random.default_rng(rng_seed)
        for _ in range(epochs):
            for index in rng.permutation(len(dataset)):
                trace = forward(model, dataset.X[index], **hidden)
                error = dataset.y[index] - trace.y_hat
                model = lms_step(model, gradients(trace, model, error, normalization), learning_rates)
        return model
