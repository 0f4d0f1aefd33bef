//! Wall and CPU time measurement. CPU time is user+sys of this process and
//! its children, matching what `time` reports, and is kept separate from
//! wall time in every report.

use std::time::Instant;

use serde::Serialize;

fn rusage_seconds(who: libc::c_int) -> f64 {
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    let rc = unsafe { libc::getrusage(who, &mut usage) };
    if rc != 0 {
        return 0.0;
    }
    let tv = |t: libc::timeval| t.tv_sec as f64 + t.tv_usec as f64 / 1e6;
    tv(usage.ru_utime) + tv(usage.ru_stime)
}

fn cpu_seconds() -> f64 {
    rusage_seconds(libc::RUSAGE_SELF) + rusage_seconds(libc::RUSAGE_CHILDREN)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhaseTiming {
    pub wall_ms: f64,
    pub cpu_ms: f64,
}

pub struct PhaseTimer {
    wall: Instant,
    cpu: f64,
}

impl PhaseTimer {
    pub fn start() -> Self {
        PhaseTimer {
            wall: Instant::now(),
            cpu: cpu_seconds(),
        }
    }

    pub fn stop(&self) -> PhaseTiming {
        PhaseTiming {
            wall_ms: self.wall.elapsed().as_secs_f64() * 1e3,
            cpu_ms: (cpu_seconds() - self.cpu) * 1e3,
        }
    }
}
