namespace cli {
}  // namespace cli
