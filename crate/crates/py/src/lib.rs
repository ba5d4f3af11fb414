//! Python bindings. Build with `cargo build -p packetlab-py --release` and
//! import the resulting shared library as `packetlab_py`.

use packetlab::experiments::{self as exp, ScreenIntensity};
use packetlab::kinematics::{self, ParticleState};
use packetlab::sampler::{self, SeededStream};
use packetlab::wavepacket::{self, PacketSpec};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(packetlab_py, DomainError, PyValueError);
create_exception!(packetlab_py, PreconditionError, PyValueError);
create_exception!(packetlab_py, AnalysisError, PyValueError);

fn err(e: packetlab::Error) -> PyErr {
    match e {
        packetlab::Error::Domain(m) => DomainError::new_err(m),
        packetlab::Error::Precondition(m) => PreconditionError::new_err(m),
        packetlab::Error::Analysis(m) => AnalysisError::new_err(m),
    }
}

#[pyclass(name = "ParticleState", frozen)]
struct PyParticleState(ParticleState);

#[pymethods]
impl PyParticleState {
    #[new]
    fn new(rest_mass: f64, speed: f64) -> PyResult<Self> {
        ParticleState::new(rest_mass, speed).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_beta(rest_mass: f64, beta: f64) -> PyResult<Self> {
        ParticleState::from_beta(rest_mass, beta)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn rest_mass(&self) -> f64 {
        self.0.rest_mass()
    }

    #[getter]
    fn speed(&self) -> f64 {
        self.0.speed()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta()
    }

    fn gamma(&self) -> f64 {
        kinematics::gamma(&self.0)
    }

    fn kinematic_state<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let k = kinematics::kinematic_state(&self.0);
        let d = PyDict::new(py);
        d.set_item("gamma", k.gamma)?;
        d.set_item("relativistic_mass", k.relativistic_mass)?;
        d.set_item("momentum", k.momentum)?;
        d.set_item("total_energy", k.total_energy)?;
        d.set_item("internal_energy", k.internal_energy)?;
        d.set_item("kinetic_term", k.kinetic_term)?;
        d.set_item("direction_angle_cos", k.direction_angle_cos)?;
        Ok(d)
    }

    /// `(compton, transformed_compton, de_broglie)` in metres.
    fn wavelengths(&self) -> PyResult<(f64, f64, f64)> {
        let w = kinematics::wavelengths(&self.0).map_err(err)?;
        Ok((w.compton, w.transformed_compton, w.de_broglie))
    }

    fn __repr__(&self) -> String {
        format!(
            "ParticleState(rest_mass={:e}, speed={:e})",
            self.0.rest_mass(),
            self.0.speed()
        )
    }
}

#[pyfunction]
fn compton_wavelength(rest_mass: f64) -> PyResult<f64> {
    kinematics::compton_wavelength(rest_mass).map_err(err)
}

#[pyclass(name = "Packet", frozen)]
struct PyPacket(PacketSpec);

#[pymethods]
impl PyPacket {
    #[staticmethod]
    #[pyo3(signature = (state, direction, envelope_width=None))]
    fn massive(
        state: &PyParticleState,
        direction: [f64; 3],
        envelope_width: Option<f64>,
    ) -> PyResult<Self> {
        let width = match envelope_width {
            Some(w) => w,
            None => {
                let k = kinematics::kinematic_state(&state.0).momentum / packetlab::constants::HBAR;
                wavepacket::default_envelope_width(k)
            }
        };
        wavepacket::make_massive_packet(&state.0, direction, width)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (frequency, direction, envelope_width=None))]
    fn photon(frequency: f64, direction: [f64; 3], envelope_width: Option<f64>) -> PyResult<Self> {
        let k = 2.0 * std::f64::consts::PI * frequency / packetlab::constants::SPEED_OF_LIGHT;
        let width = envelope_width.unwrap_or_else(|| wavepacket::default_envelope_width(k));
        wavepacket::make_photon_packet(frequency, direction, width)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn carrier_wavelength(&self) -> f64 {
        self.0.carrier_wavelength()
    }

    #[getter]
    fn envelope_width(&self) -> f64 {
        self.0.envelope_width()
    }

    #[getter]
    fn group_speed(&self) -> f64 {
        self.0.group_speed()
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.0.energy()
    }

    fn evaluate(&self, position: [f64; 3], time: f64) -> complex::Value {
        let b = wavepacket::evaluate(&self.0, position, time);
        complex::Value(b.re, b.im)
    }

    /// `(residual_norm, convergence_order)`.
    fn wave_equation_residual(
        &self,
        grid_spacing: f64,
        window_halfwidth: f64,
    ) -> PyResult<(f64, f64)> {
        let r = wavepacket::wave_equation_residual(&self.0, grid_spacing, window_halfwidth)
            .map_err(err)?;
        Ok((r.residual_norm, r.convergence_order))
    }

    fn envelope_width_at(&self, time: f64, grid_spacing: f64) -> PyResult<f64> {
        wavepacket::envelope_width_at(&self.0, time, grid_spacing).map_err(err)
    }
}

mod complex {
    use pyo3::prelude::*;
    use pyo3::types::PyComplex;

    /// Complex value handed to Python as a builtin `complex`.
    pub struct Value(pub f64, pub f64);

    impl<'py> IntoPyObject<'py> for Value {
        type Target = PyComplex;
        type Output = Bound<'py, PyComplex>;
        type Error = std::convert::Infallible;

        fn into_pyobject(self, py: Python<'py>) -> Result<Self::Output, Self::Error> {
            Ok(PyComplex::from_doubles(py, self.0, self.1))
        }
    }
}

#[pyclass(name = "ScreenIntensity", frozen)]
struct PyScreenIntensity(ScreenIntensity);

#[pymethods]
impl PyScreenIntensity {
    #[getter]
    fn positions(&self) -> Vec<f64> {
        self.0.positions().to_vec()
    }

    #[getter]
    fn density(&self) -> Vec<f64> {
        self.0.density().to_vec()
    }

    fn density_at(&self, x: f64) -> f64 {
        self.0.density_at(x)
    }

    fn fringe_spacing(&self) -> PyResult<f64> {
        exp::fringe_spacing(&self.0).map_err(err)
    }

    fn visibility(&self, window_halfwidth: f64) -> PyResult<f64> {
        exp::visibility(&self.0, window_halfwidth).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Draw `n` arrival positions from stream `(seed, stream_index)`.
    #[pyo3(signature = (n, seed, stream_index=0))]
    fn sample(&self, n: usize, seed: u64, stream_index: u64) -> Vec<f64> {
        sampler::sample_positions(&self.0, n, SeededStream::new(seed, stream_index))
    }

    /// Histogram `n` arrivals drawn over `parts` streams; returns
    /// `(bin_edges, counts)`.
    #[pyo3(signature = (n, bins, seed, parts=1))]
    fn histogram(
        &self,
        n: usize,
        bins: usize,
        seed: u64,
        parts: usize,
    ) -> PyResult<(Vec<f64>, Vec<u64>)> {
        let range = (self.0.lower(), self.0.upper());
        let h = sampler::parallel_histogram(&self.0, n, parts, bins, range, seed).map_err(err)?;
        Ok((h.bin_edges, h.counts))
    }

    /// Pearson chi-square per degree of freedom of a fresh histogram
    /// against this density.
    #[pyo3(signature = (n, bins, seed, parts=1))]
    fn chi_square_per_dof(&self, n: usize, bins: usize, seed: u64, parts: usize) -> PyResult<f64> {
        let range = (self.0.lower(), self.0.upper());
        let h = sampler::parallel_histogram(&self.0, n, parts, bins, range, seed).map_err(err)?;
        Ok(sampler::goodness_of_fit(&h, &self.0)
            .map_err(err)?
            .chi_square_per_dof)
    }
}

#[pyfunction]
#[pyo3(signature = (
    wavelength, slit_separation, slit_width, screen_distance,
    open_a=true, open_b=true, screen_halfwidth=None, grid_points=exp::DEFAULT_GRID_POINTS,
))]
#[allow(clippy::too_many_arguments)]
fn two_slit_intensity(
    wavelength: f64,
    slit_separation: f64,
    slit_width: f64,
    screen_distance: f64,
    open_a: bool,
    open_b: bool,
    screen_halfwidth: Option<f64>,
    grid_points: usize,
) -> PyResult<PyScreenIntensity> {
    let base = exp::TwoSlitConfig::new(wavelength, slit_separation, slit_width, screen_distance);
    let config = exp::TwoSlitConfig {
        open_a,
        open_b,
        screen_halfwidth: screen_halfwidth.unwrap_or(base.screen_halfwidth),
        grid_points,
        ..base
    };
    exp::two_slit_intensity(&config)
        .map(PyScreenIntensity)
        .map_err(err)
}

/// `(p1, p2)`.
#[pyfunction]
#[pyo3(signature = (phase_difference, second_beamsplitter_present=true))]
fn mach_zehnder_probabilities(
    phase_difference: f64,
    second_beamsplitter_present: bool,
) -> (f64, f64) {
    let p = exp::mach_zehnder_probabilities(&exp::MachZehnderConfig {
        phase_difference,
        second_beamsplitter_present,
    });
    (p.p1, p.p2)
}

/// Split `n` detections between the two detectors.
#[pyfunction]
#[pyo3(signature = (p1, n, seed, stream_index=0))]
fn sample_detectors(p1: f64, n: u64, seed: u64, stream_index: u64) -> (u64, u64) {
    let probs = exp::DetectorProbabilities { p1, p2: 1.0 - p1 };
    sampler::sample_detectors(&probs, n, SeededStream::new(seed, stream_index))
}

/// `(resonant, mode_number)`.
#[pyfunction]
#[pyo3(signature = (cavity_length, wavelength, tolerance=exp::DEFAULT_RESONANCE_TOLERANCE))]
fn resonance_check(cavity_length: f64, wavelength: f64, tolerance: f64) -> (bool, u64) {
    let r = exp::resonance_check(cavity_length, wavelength, tolerance);
    (r.resonant, r.mode_number)
}

#[pyfunction]
#[pyo3(signature = (cavity_length, wavelength, grid_points=4097))]
fn cavity_profile(
    cavity_length: f64,
    wavelength: f64,
    grid_points: usize,
) -> PyResult<PyScreenIntensity> {
    let config = exp::CavityConfig {
        cavity_length,
        wavelength,
    };
    exp::cavity_profile(&config, grid_points)
        .map(PyScreenIntensity)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (
    wavelength, effective_slit_separation, screen_distance,
    relative_phase=0.0, screen_halfwidth=None, grid_points=exp::DEFAULT_GRID_POINTS,
))]
fn two_laser_intensity(
    wavelength: f64,
    effective_slit_separation: f64,
    screen_distance: f64,
    relative_phase: f64,
    screen_halfwidth: Option<f64>,
    grid_points: usize,
) -> PyResult<PyScreenIntensity> {
    let base = exp::TwoLaserConfig::new(
        wavelength,
        effective_slit_separation,
        screen_distance,
        relative_phase,
    );
    let config = exp::TwoLaserConfig {
        screen_halfwidth: screen_halfwidth.unwrap_or(base.screen_halfwidth),
        grid_points,
        ..base
    };
    exp::two_laser_intensity(&config)
        .map(PyScreenIntensity)
        .map_err(err)
}

#[pymodule]
fn packetlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("PreconditionError", py.get_type::<PreconditionError>())?;
    m.add("AnalysisError", py.get_type::<AnalysisError>())?;
    m.add("SPEED_OF_LIGHT", packetlab::constants::SPEED_OF_LIGHT)?;
    m.add("PLANCK", packetlab::constants::PLANCK)?;
    m.add("HBAR", packetlab::constants::HBAR)?;
    m.add("ELECTRON_MASS", packetlab::constants::ELECTRON_MASS)?;
    m.add("GENERATOR_ALGORITHM", sampler::GENERATOR_ALGORITHM)?;
    m.add_class::<PyParticleState>()?;
    m.add_class::<PyPacket>()?;
    m.add_class::<PyScreenIntensity>()?;
    m.add_function(wrap_pyfunction!(compton_wavelength, m)?)?;
    m.add_function(wrap_pyfunction!(two_slit_intensity, m)?)?;
    m.add_function(wrap_pyfunction!(mach_zehnder_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(sample_detectors, m)?)?;
    m.add_function(wrap_pyfunction!(resonance_check, m)?)?;
    m.add_function(wrap_pyfunction!(cavity_profile, m)?)?;
    m.add_function(wrap_pyfunction!(two_laser_intensity, m)?)?;
    Ok(())
}
