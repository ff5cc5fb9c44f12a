use core::cell::RefCell;

use astro_float::Consts;

/// Cache of mathematical constants (pi, ln 2, ...) reused across transcendental calls.
///
/// Not `Sync`; create one per thread. Results never depend on the cache state.
pub struct Context {
    consts: RefCell<Consts>,
}

impl Context {
    pub fn new() -> Self {
        Context {
            consts: RefCell::new(Consts::new().expect("constant cache allocation")),
        }
    }

    pub(crate) fn with<R>(&self, f: impl FnOnce(&mut Consts) -> R) -> R {
        f(&mut self.consts.borrow_mut())
    }
}

impl Default for Context {
    fn default() -> Self {
        Self::new()
    }
}
