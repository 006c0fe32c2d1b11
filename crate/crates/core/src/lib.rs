pub mod algebra;
pub mod cohomology;
pub mod complexes;
pub mod grobner;
pub mod report;
pub mod ring_spec;
pub mod verdict;
pub mod windows;
