namespace bosegas {
}  // namespace bosegas
