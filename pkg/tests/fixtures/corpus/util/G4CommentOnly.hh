// This header is intentionally left without code.
//
/* It only documents conventions:
 *   - member data start with f
 *   - static data start with fg
 */

// End of file.
