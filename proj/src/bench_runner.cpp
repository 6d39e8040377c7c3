namespace planwb {}
