//! C interface to `twolayer`.
//!
//! Every fallible function returns a [`TlStatus`]; on failure a message is
//! available from [`tl_last_error_message`] on the same thread. Objects are
//! opaque handles released with their `_free` function, and strings returned
//! through `char **` are released with [`tl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twolayer::generator::{count_classes_with_jobs, generate_classes_with_jobs, reflect_sentence};
use twolayer::network::parse_networks;
use twolayer::saturation::is_saturated_semantic;
use twolayer::word::{net_of_sentence, sentence_of};
use twolayer::{Error, GrammarVariant, Network, Sentence};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    Unsupported = 3,
    ResourceLimit = 4,
    Internal = 5,
    Io = 6,
    NullPointer = 7,
    Panic = 8,
}

/// All classes of two-layer networks.
pub const TL_VARIANT_FULL: u32 = 0;
/// Classes of saturated networks.
pub const TL_VARIANT_SATURATED: u32 = 1;
/// Saturated classes modulo reflection.
pub const TL_VARIANT_REFLECTION: u32 = 2;

/// Canonical sentences produced by [`tl_generate_classes`].
pub struct TlClassList {
    sentences: Vec<CString>,
}

/// A comparator network.
pub struct TlNetwork {
    net: Network,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TlStatus {
    match e {
        Error::InvalidArgument(_) => TlStatus::InvalidArgument,
        Error::Parse { .. } => TlStatus::Parse,
        Error::Unsupported(_) => TlStatus::Unsupported,
        Error::ResourceLimit { .. } => TlStatus::ResourceLimit,
        Error::Internal(_) => TlStatus::Internal,
        Error::Io(_) => TlStatus::Io,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, recording any error or panic.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TlStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("{what} is null"));
            TlStatus::NullPointer
        }
        Err(_) => {
            set_error("panic inside twolayer");
            TlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidArgument(format!("{what} is not UTF-8"))))
}

fn variant_of(v: u32) -> Result<GrammarVariant, Failure> {
    match v {
        TL_VARIANT_FULL => Ok(GrammarVariant::Full),
        TL_VARIANT_SATURATED => Ok(GrammarVariant::Saturated),
        TL_VARIANT_REFLECTION => Ok(GrammarVariant::SaturatedModuloReflection),
        other => Err(Failure::Lib(Error::InvalidArgument(format!(
            "unknown variant {other}"
        )))),
    }
}

fn to_c_string(s: String) -> Result<CString, Failure> {
    CString::new(s).map_err(|_| Failure::Lib(Error::Internal("interior NUL".into())))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    *out = to_c_string(s)?.into_raw();
    Ok(())
}

/// The message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generates the canonical sentences of `variant` on `n` channels using
/// `jobs` worker threads (0 or 1 means sequential).
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn tl_generate_classes(
    n: usize,
    variant: u32,
    jobs: usize,
    out: *mut *mut TlClassList,
) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = ptr::null_mut();
        let classes = generate_classes_with_jobs(n, variant_of(variant)?, jobs)?;
        let sentences = classes
            .iter()
            .map(|s| to_c_string(s.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        *out = Box::into_raw(Box::new(TlClassList { sentences }));
        Ok(())
    })
}

/// Number of sentences in the list; 0 for null.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_class_list_len(list: *const TlClassList) -> usize {
    list.as_ref().map_or(0, |l| l.sentences.len())
}

/// The sentence at `index`, owned by the list; null if out of range.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_class_list_sentence(
    list: *const TlClassList,
    index: usize,
) -> *const c_char {
    list.as_ref()
        .and_then(|l| l.sentences.get(index))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// # Safety
/// `list` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_class_list_free(list: *mut TlClassList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Counts the classes of `variant` on `n` channels.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_count_classes(
    n: usize,
    variant: u32,
    jobs: usize,
    out: *mut u64,
) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = count_classes_with_jobs(n, variant_of(variant)?, jobs)?;
        Ok(())
    })
}

unsafe fn give_network(out: *mut *mut TlNetwork, net: Network) {
    *out = Box::into_raw(Box::new(TlNetwork { net }));
}

/// Parses the first network of a text in the `n=<channels>` block format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_network_parse(
    text: *const c_char,
    out: *mut *mut TlNetwork,
) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let net = parse_networks(text)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::InvalidArgument("no network in text".into()))?;
        give_network(out, net);
        Ok(())
    })
}

/// Builds the two-layer network of a sentence on first layer `F_n`.
///
/// # Safety
/// `sentence` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_network_from_sentence(
    sentence: *const c_char,
    n: usize,
    out: *mut *mut TlNetwork,
) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = ptr::null_mut();
        let s: Sentence = read_str(sentence, "sentence")?.trim().parse()?;
        give_network(out, net_of_sentence(&s, n)?);
        Ok(())
    })
}

/// Number of channels; 0 for null.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_network_channels(net: *const TlNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.net.n())
}

/// The canonical sentence of a two-layer network with maximal first layer.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_network_sentence(
    net: *const TlNetwork,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let net = net.as_ref().ok_or(Failure::Null("net"))?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = ptr::null_mut();
        give_string(out, sentence_of(&net.net)?.to_string())
    })
}

/// The network in the `n=<channels>` block format.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_network_format(
    net: *const TlNetwork,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        let net = net.as_ref().ok_or(Failure::Null("net"))?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = ptr::null_mut();
        give_string(out, net.net.to_string())
    })
}

/// Whether a two-layer network is saturated, decided on its output set.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_network_is_saturated(
    net: *const TlNetwork,
    out: *mut bool,
) -> TlStatus {
    guard(|| {
        let net = net.as_ref().ok_or(Failure::Null("net"))?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = is_saturated_semantic(&net.net)?;
        Ok(())
    })
}

/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tl_network_free(net: *mut TlNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// The sentence of the reflected class of a canonical sentence.
///
/// # Safety
/// `sentence` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_reflect_sentence(
    sentence: *const c_char,
    out: *mut *mut c_char,
) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        *out = ptr::null_mut();
        let s: Sentence = read_str(sentence, "sentence")?.trim().parse()?;
        if !s.is_canonical() {
            return Err(Error::InvalidArgument(format!("sentence {s} is not canonical")).into());
        }
        give_string(out, reflect_sentence(&s).to_string())
    })
}
