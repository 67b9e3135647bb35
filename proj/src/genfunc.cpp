namespace genfunc {
}  // namespace genfunc
