namespace goe {
}  // namespace goe
