pub mod bessel_table;
