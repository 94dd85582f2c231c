//! Based free modules, their maps, and the power functors acting on both.

mod free;
mod functor;
mod label;

pub use free::{
    direct_sum, direct_sum_maps, inclusion, projection, sum_offset, tensor_map, tensor_module,
    BasedFreeModule, ModuleMap,
};
pub use functor::{
    div2_to_tensor2, ext2_to_tensor2, tensor2_to_ext2, tensor2_to_sym2, Power,
};
pub use label::Label;
